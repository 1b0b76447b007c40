#pragma once

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tailpoint/delimiting.hpp"
#include "tailpoint/distributions.hpp"
#include "tailpoint/kde.hpp"
#include "tailpoint/parallel.hpp"
#include "tailpoint/rng.hpp"

namespace tailpoint {

enum class StudyTarget { pinf, pmconv };

inline const char* study_target_name(StudyTarget t) {
    return t == StudyTarget::pinf ? "pinf" : "pmconv";
}

struct MseStudyConfig {
    StudyTarget target = StudyTarget::pinf;
    std::vector<double> nu_values{1.0, 5.0, 100.0};
    std::vector<int> n_values{100, 500, 2000};
    int replications = 1000;
    std::uint64_t base_seed = 1;
};

struct MseCell {
    double nu;
    int n;
    int replications;
    double mse;
    double true_point;
    double bandwidth;
};

struct MseStudy {
    MseStudyConfig config;
    std::vector<MseCell> cells;
};

// Monte Carlo MSE of the right-side sample estimator on standard Student-t
// data. Replication k of cell (nu, n) is seeded by hashing
// (base_seed, nu, n, k), so every cell and every replication is independent
// of thread count and of the other cells.
inline MseStudy run_mse_study(const MseStudyConfig& cfg) {
    if (cfg.replications < 1)
        throw std::invalid_argument("mse study: replications must be >= 1");
    if (cfg.nu_values.empty() || cfg.n_values.empty())
        throw std::invalid_argument("mse study: need at least one nu and one n");
    for (double nu : cfg.nu_values)
        if (!(nu > 0.0)) throw std::invalid_argument("mse study: nu must be > 0");
    for (int n : cfg.n_values)
        if (n < 1) throw std::invalid_argument("mse study: n must be >= 1");

    int r = cfg.target == StudyTarget::pinf ? 1 : 2;
    MseStudy out;
    out.config = cfg;
    for (double nu : cfg.nu_values) {
        DistributionSpec spec = make_spec(Family::student_t, {nu, 0.0, 1.0});
        double roughness = true_roughness(make_bundle(spec), r + 2);
        double true_pt = cfg.target == StudyTarget::pinf
                             ? std::sqrt(nu / (nu + 2.0))
                             : std::sqrt(3.0 * nu / (nu + 2.0));
        for (int n : cfg.n_values) {
            double h = amise_bandwidth(r, static_cast<std::size_t>(n), roughness);
            std::vector<double> est(static_cast<std::size_t>(cfg.replications));
            parallel_for(est.size(), [&](std::size_t k) {
                std::uint64_t seed = seed_hash({cfg.base_seed, seed_part(nu),
                                                static_cast<std::uint64_t>(n),
                                                static_cast<std::uint64_t>(k)});
                std::vector<double> data = sample(spec, static_cast<std::size_t>(n), seed);
                est[k] = sample_point(data, 0.0, Side::right, r, h);
            });
            double mse = 0.0;
            for (double e : est) {
                double d = e - true_pt;
                mse += d * d;
            }
            mse /= static_cast<double>(cfg.replications);
            out.cells.push_back({nu, n, cfg.replications, mse, true_pt, h});
        }
    }
    return out;
}

namespace detail {

inline void csv_number(std::ostream& os, double v) { os << format_double(v); }

inline void csv_opt(std::ostream& os, const std::optional<double>& v) {
    if (v) os << format_double(*v);
}

}  // namespace detail

inline std::string mse_to_csv(const MseStudy& study) {
    std::ostringstream os;
    os << "target,nu,n,N,mse,base_seed\n";
    for (const MseCell& c : study.cells) {
        os << study_target_name(study.config.target) << ',' << detail::format_double(c.nu) << ','
           << c.n << ',' << c.replications << ',' << detail::format_double(c.mse) << ','
           << study.config.base_seed << '\n';
    }
    return os.str();
}

// One sweep row: the varied parameter values followed by the right-side
// delimiting points, their cdf levels, the 5%/95% quantiles, and kurtosis.
struct SweepRow {
    std::vector<double> key;
    std::optional<double> pinf_r, pmconv_r, pmcurv_r;
    std::optional<double> cdf_pinf_r, cdf_pmconv_r, cdf_pmcurv_r;
    std::optional<double> q05, q95, kurt;
    bool failed = false;
    std::string error;
};

struct SweepTable {
    std::vector<std::string> key_names;
    std::vector<SweepRow> rows;
};

namespace detail {

inline SweepRow sweep_row(const DistributionSpec& spec, std::vector<double> key) {
    SweepRow row;
    row.key = std::move(key);
    try {
        DensityBundle b = make_bundle(spec);
        DelimitingReport rep = report(b);
        row.pinf_r = rep.right.pinf;
        row.pmconv_r = rep.right.pmconv;
        row.pmcurv_r = rep.right.pmcurv;
        row.cdf_pinf_r = rep.right.cdf_pinf;
        row.cdf_pmconv_r = rep.right.cdf_pmconv;
        row.cdf_pmcurv_r = rep.right.cdf_pmcurv;
        row.q05 = b.quantile(0.05);
        row.q95 = b.quantile(0.95);
        row.kurt = kurtosis(spec);
    } catch (const std::exception& e) {
        row.failed = true;
        row.error = e.what();
        row.pinf_r = row.pmconv_r = row.pmcurv_r = std::nullopt;
        row.cdf_pinf_r = row.cdf_pmconv_r = row.cdf_pmcurv_r = std::nullopt;
        row.q05 = row.q95 = row.kurt = std::nullopt;
    }
    return row;
}

inline std::vector<double> linear_grid(double from, double to, int steps) {
    std::vector<double> g(steps);
    for (int i = 0; i < steps; ++i)
        g[i] = steps == 1 ? from : from + (to - from) * i / (steps - 1);
    return g;
}

inline std::vector<double> geometric_grid(double from, double to, int steps) {
    if (!(from > 0.0) || !(to > 0.0))
        throw std::invalid_argument("sweep: log grid needs positive endpoints");
    std::vector<double> g(steps);
    double lr = std::log(to / from);
    for (int i = 0; i < steps; ++i)
        g[i] = steps == 1 ? from : from * std::exp(lr * i / (steps - 1));
    return g;
}

}  // namespace detail

// Parameter sweep over one family, one varied parameter, other parameters at
// their defaults.
inline SweepTable run_sweep_custom(Family family, const std::string& param, double from, double to,
                                   int steps, bool log_grid) {
    if (steps < 1) throw std::invalid_argument("sweep: steps must be >= 1");
    const auto& infos = detail::param_info(family);
    int idx = -1;
    for (std::size_t i = 0; i < infos.size(); ++i)
        if (param == infos[i].name) idx = static_cast<int>(i);
    if (idx < 0) {
        std::string names;
        for (const auto& pi : infos) names += std::string(names.empty() ? "" : ", ") + pi.name;
        throw std::invalid_argument("sweep: family '" + std::string(family_name(family)) +
                                    "' has no parameter '" + param + "' (accepted: " + names +
                                    ")");
    }
    SweepTable table;
    table.key_names = {"param_value"};
    std::vector<double> grid = log_grid ? detail::geometric_grid(from, to, steps)
                                        : detail::linear_grid(from, to, steps);
    for (double v : grid) {
        DistributionSpec spec;
        spec.family = family;
        for (const auto& pi : infos) spec.params.push_back(pi.default_value);
        spec.params[static_cast<std::size_t>(idx)] = v;
        table.rows.push_back(detail::sweep_row(spec, {v}));
    }
    return table;
}

inline SweepTable run_sweep_preset(const std::string& name) {
    if (name == "lognormal-sigma")
        return run_sweep_custom(Family::log_normal, "sigma", 0.1, 2.0, 40, false);
    if (name == "studentt-nu") return run_sweep_custom(Family::student_t, "nu", 1.0, 20.0, 40, false);
    if (name == "gaussian-sigma")
        return run_sweep_custom(Family::gaussian, "sigma", 0.1, 100.0, 40, true);
    if (name == "exponential-lambda")
        return run_sweep_custom(Family::exponential, "rate", 0.1, 5.0, 40, false);
    if (name == "skewt-grid") {
        SweepTable table;
        table.key_names = {"nu", "s"};
        for (int i = 0; i < 20; ++i) {
            double nu = 1.0 + (20.0 - 1.0) * i / 19.0;
            for (int j = 0; j < 21; ++j) {
                double s = -10.0 + 20.0 * j / 20.0;
                DistributionSpec spec = make_spec(Family::skew_t, {nu, s, 0.0, 1.0});
                table.rows.push_back(detail::sweep_row(spec, {nu, s}));
            }
        }
        return table;
    }
    throw std::invalid_argument(
        "unknown sweep preset '" + name +
        "' (accepted: lognormal-sigma, studentt-nu, gaussian-sigma, exponential-lambda, "
        "skewt-grid)");
}

inline std::string sweep_to_csv(const SweepTable& table) {
    std::ostringstream os;
    for (const std::string& k : table.key_names) os << k << ',';
    os << "pinf_r,pmconv_r,pmcurv_r,cdf_pinf_r,cdf_pmconv_r,cdf_pmcurv_r,q05,q95,kurtosis\n";
    for (const SweepRow& row : table.rows) {
        for (double k : row.key) os << detail::format_double(k) << ',';
        detail::csv_opt(os, row.pinf_r);
        os << ',';
        detail::csv_opt(os, row.pmconv_r);
        os << ',';
        detail::csv_opt(os, row.pmcurv_r);
        os << ',';
        detail::csv_opt(os, row.cdf_pinf_r);
        os << ',';
        detail::csv_opt(os, row.cdf_pmconv_r);
        os << ',';
        detail::csv_opt(os, row.cdf_pmcurv_r);
        os << ',';
        detail::csv_opt(os, row.q05);
        os << ',';
        detail::csv_opt(os, row.q95);
        os << ',';
        detail::csv_opt(os, row.kurt);
        os << '\n';
    }
    return os.str();
}

struct ScatterRow {
    DistributionSpec spec;
    std::optional<double> cdf_pmcurv_r, cdf_pmconv_r, cdf_pinf_r;
};

// Fixed catalog of representative members from every family, reported by the
// scale-free cdf levels of their right-side delimiting points.
inline std::vector<ScatterRow> scatter_families() {
    std::vector<DistributionSpec> specs = {
        make_spec(Family::gaussian, {0.0, 1.0}),
        make_spec(Family::cauchy, {0.0, 1.0}),
        make_spec(Family::student_t, {3.0, 0.0, 1.0}),
        make_spec(Family::student_t, {5.0, 0.0, 1.0}),
        make_spec(Family::student_t, {10.0, 0.0, 1.0}),
        make_spec(Family::log_normal, {0.0, 0.25}),
        make_spec(Family::log_normal, {0.0, 0.5}),
        make_spec(Family::log_normal, {0.0, 1.0}),
        make_spec(Family::exponential, {1.0}),
        make_spec(Family::exponential, {2.0}),
        make_spec(Family::skew_t, {3.0, 10.0, 0.0, 1.0}),
        make_spec(Family::skew_t, {5.0, -5.0, 0.0, 1.0}),
        make_spec(Family::skew_t, {10.0, 3.0, 0.0, 1.0}),
    };
    std::vector<ScatterRow> rows;
    for (const DistributionSpec& spec : specs) {
        ScatterRow row;
        row.spec = spec;
        try {
            DelimitingReport rep = report(spec);
            row.cdf_pmcurv_r = rep.right.cdf_pmcurv;
            row.cdf_pmconv_r = rep.right.cdf_pmconv;
            row.cdf_pinf_r = rep.right.cdf_pinf;
        } catch (const std::exception& e) {
            std::cerr << "scatter: " << to_string(spec) << " failed: " << e.what() << "\n";
        }
        rows.push_back(row);
    }
    return rows;
}

inline std::string scatter_to_csv(const std::vector<ScatterRow>& rows) {
    std::ostringstream os;
    os << "dist,cdf_pmcurv_r,cdf_pmconv_r,cdf_pinf_r\n";
    for (const ScatterRow& row : rows) {
        os << '"' << to_string(row.spec) << '"' << ',';
        detail::csv_opt(os, row.cdf_pmcurv_r);
        os << ',';
        detail::csv_opt(os, row.cdf_pmconv_r);
        os << ',';
        detail::csv_opt(os, row.cdf_pinf_r);
        os << '\n';
    }
    return os.str();
}

}  // namespace tailpoint
