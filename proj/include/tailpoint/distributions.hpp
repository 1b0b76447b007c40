#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tailpoint/math/fd.hpp"
#include "tailpoint/math/quadrature.hpp"
#include "tailpoint/math/roots.hpp"
#include "tailpoint/math/special.hpp"
#include "tailpoint/rng.hpp"

namespace tailpoint {

enum class Family { gaussian, student_t, cauchy, log_normal, exponential, skew_t };

struct Interval {
    double lo, hi;
};

// Family tag plus ordered parameter vector:
//   gaussian    {mu, sigma}
//   student_t   {nu, mu, sigma}
//   cauchy      {loc, scale}
//   log_normal  {mu, sigma}
//   exponential {rate}
//   skew_t      {nu, s, mu, sigma}
struct DistributionSpec {
    Family family;
    std::vector<double> params;
};

struct DensityBundle {
    DistributionSpec spec;
    double mode;
    Interval support;
    std::function<double(double)> pdf, dpdf, d2pdf, cdf, quantile;
    std::function<std::vector<double>(std::size_t, std::uint64_t)> sampler;
};

namespace detail {

struct ParamInfo {
    const char* name;
    double default_value;
    bool positive;
};

inline const std::vector<ParamInfo>& param_info(Family f) {
    static const std::vector<ParamInfo> gaussian = {{"mu", 0.0, false}, {"sigma", 1.0, true}};
    static const std::vector<ParamInfo> student_t = {
        {"nu", 1.0, true}, {"mu", 0.0, false}, {"sigma", 1.0, true}};
    static const std::vector<ParamInfo> cauchy = {{"loc", 0.0, false}, {"scale", 1.0, true}};
    static const std::vector<ParamInfo> log_normal = {{"mu", 0.0, false}, {"sigma", 1.0, true}};
    static const std::vector<ParamInfo> exponential = {{"rate", 1.0, true}};
    static const std::vector<ParamInfo> skew_t = {
        {"nu", 1.0, true}, {"s", 0.0, false}, {"mu", 0.0, false}, {"sigma", 1.0, true}};
    switch (f) {
        case Family::gaussian: return gaussian;
        case Family::student_t: return student_t;
        case Family::cauchy: return cauchy;
        case Family::log_normal: return log_normal;
        case Family::exponential: return exponential;
        case Family::skew_t: return skew_t;
    }
    throw std::logic_error("param_info: unknown family");
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace detail

inline const char* family_name(Family f) {
    switch (f) {
        case Family::gaussian: return "gaussian";
        case Family::student_t: return "studentt";
        case Family::cauchy: return "cauchy";
        case Family::log_normal: return "lognormal";
        case Family::exponential: return "exponential";
        case Family::skew_t: return "skewt";
    }
    return "?";
}

inline void validate_spec(const DistributionSpec& spec) {
    const auto& info = detail::param_info(spec.family);
    if (spec.params.size() != info.size())
        throw std::invalid_argument(std::string(family_name(spec.family)) + ": expected " +
                                    std::to_string(info.size()) + " parameters");
    for (std::size_t i = 0; i < info.size(); ++i) {
        double v = spec.params[i];
        if (!std::isfinite(v))
            throw std::invalid_argument(std::string(family_name(spec.family)) + ": parameter " +
                                        info[i].name + " must be finite");
        if (info[i].positive && !(v > 0.0))
            throw std::invalid_argument(std::string(family_name(spec.family)) + ": parameter " +
                                        info[i].name + " must be positive");
    }
}

inline DistributionSpec make_spec(Family f, std::vector<double> params) {
    DistributionSpec spec{f, std::move(params)};
    validate_spec(spec);
    return spec;
}

// Compact CLI form, e.g. "gaussian(mu=0,sigma=1)", "skewt(nu=3,s=10)",
// "cauchy()". Omitted keys take documented defaults; unknown keys are
// rejected with the accepted list.
inline DistributionSpec parse_spec(const std::string& text) {
    auto strip = [](std::string s) {
        std::size_t b = s.find_first_not_of(" \t");
        std::size_t e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string body = strip(text);
    std::string name = body, args;
    std::size_t open = body.find('(');
    if (open != std::string::npos) {
        if (body.back() != ')')
            throw std::invalid_argument("distribution spec: missing ')': " + text);
        name = strip(body.substr(0, open));
        args = body.substr(open + 1, body.size() - open - 2);
    }
    Family fam;
    if (name == "gaussian" || name == "normal") fam = Family::gaussian;
    else if (name == "studentt" || name == "student-t") fam = Family::student_t;
    else if (name == "cauchy") fam = Family::cauchy;
    else if (name == "lognormal" || name == "log-normal") fam = Family::log_normal;
    else if (name == "exponential") fam = Family::exponential;
    else if (name == "skewt" || name == "skew-t") fam = Family::skew_t;
    else
        throw std::invalid_argument(
            "unknown distribution '" + name +
            "'; accepted: gaussian, studentt, cauchy, lognormal, exponential, skewt");

    const auto& info = detail::param_info(fam);
    std::vector<double> params(info.size());
    std::vector<bool> seen(info.size(), false);
    for (std::size_t i = 0; i < info.size(); ++i) params[i] = info[i].default_value;

    std::size_t pos = 0;
    while (pos < args.size()) {
        std::size_t comma = args.find(',', pos);
        std::string item = strip(args.substr(pos, comma == std::string::npos ? std::string::npos
                                                                             : comma - pos));
        pos = comma == std::string::npos ? args.size() : comma + 1;
        if (item.empty()) continue;
        std::size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("distribution spec: expected key=value, got '" + item + "'");
        std::string key = strip(item.substr(0, eq));
        std::string val = strip(item.substr(eq + 1));
        std::size_t idx = info.size();
        for (std::size_t i = 0; i < info.size(); ++i)
            if (key == info[i].name) idx = i;
        if (idx == info.size()) {
            std::string accepted;
            for (const auto& p : info) accepted += std::string(accepted.empty() ? "" : ", ") + p.name;
            throw std::invalid_argument("unknown key '" + key + "' for " + family_name(fam) +
                                        "; accepted keys: " + accepted);
        }
        if (seen[idx]) throw std::invalid_argument("duplicate key '" + key + "'");
        seen[idx] = true;
        char* end = nullptr;
        params[idx] = std::strtod(val.c_str(), &end);
        if (end == val.c_str() || *end != '\0')
            throw std::invalid_argument("value for '" + key + "' is not a number: '" + val + "'");
    }
    return make_spec(fam, std::move(params));
}

inline std::string to_string(const DistributionSpec& spec) {
    const auto& info = detail::param_info(spec.family);
    std::string out = family_name(spec.family);
    out += '(';
    for (std::size_t i = 0; i < info.size(); ++i) {
        if (i) out += ',';
        out += info[i].name;
        out += '=';
        out += detail::format_double(spec.params[i]);
    }
    out += ')';
    return out;
}

namespace detail {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline std::function<std::vector<double>(std::size_t, std::uint64_t)> make_sampler(
    const DistributionSpec& spec) {
    auto p = spec.params;
    switch (spec.family) {
        case Family::gaussian:
            return [p](std::size_t n, std::uint64_t seed) {
                Rng rng(seed);
                std::vector<double> out(n);
                for (auto& x : out) x = p[0] + p[1] * rng.normal();
                return out;
            };
        case Family::student_t:
            return [p](std::size_t n, std::uint64_t seed) {
                Rng rng(seed);
                std::vector<double> out(n);
                for (auto& x : out) x = p[1] + p[2] * rng.student_t(p[0]);
                return out;
            };
        case Family::cauchy:
            return [p](std::size_t n, std::uint64_t seed) {
                Rng rng(seed);
                std::vector<double> out(n);
                for (auto& x : out) x = p[0] + p[1] * rng.student_t(1.0);
                return out;
            };
        case Family::log_normal:
            return [p](std::size_t n, std::uint64_t seed) {
                Rng rng(seed);
                std::vector<double> out(n);
                for (auto& x : out) x = std::exp(p[0] + p[1] * rng.normal());
                return out;
            };
        case Family::exponential:
            return [p](std::size_t n, std::uint64_t seed) {
                Rng rng(seed);
                std::vector<double> out(n);
                for (auto& x : out) x = rng.exponential(p[0]);
                return out;
            };
        case Family::skew_t: {
            double nu = p[0], s = p[1], mu = p[2], sigma = p[3];
            double delta = s / std::sqrt(1.0 + s * s);
            double coef = std::sqrt(1.0 - delta * delta);
            // skew-normal shape mixed over an independent chi-squared scale
            return [nu, mu, sigma, delta, coef](std::size_t n, std::uint64_t seed) {
                Rng rng(seed);
                std::vector<double> out(n);
                for (auto& x : out) {
                    double z0 = rng.normal(), z1 = rng.normal();
                    double sn = delta * std::fabs(z0) + coef * z1;
                    double v = rng.chi_squared(nu);
                    x = mu + sigma * sn / std::sqrt(v / nu);
                }
                return out;
            };
        }
    }
    throw std::logic_error("make_sampler: unknown family");
}

// Skew-t evaluation core in standardized coordinates. The density is
// 2 t(z;nu) T(s z sqrt((nu+1)/(nu+z^2)); nu+1); derivatives are numeric.
struct SkewTCore {
    double nu, s;
    double ln_c_nu;          // log normalizing constant of t(.;nu)
    IncompleteBeta ib_next;  // for the t(.;nu+1) cdf factor
    double nu1;

    SkewTCore(double nu_, double s_)
        : nu(nu_), s(s_), ln_c_nu(t_log_norm_const(nu_)),
          ib_next(0.5 * (nu_ + 1.0), 0.5), nu1(nu_ + 1.0) {}

    double t_cdf_next(double x) const {
        if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
        double q = 0.5 * ib_next(nu1 / (nu1 + x * x));
        return x > 0.0 ? 1.0 - q : q;
    }

    double pdf_z(double z) const {
        double w = 1.0 + z * z / nu;
        double tz = std::exp(ln_c_nu - 0.5 * (nu + 1.0) * std::log(w));
        double arg = s * z * std::sqrt(nu1 / (nu + z * z));
        return 2.0 * tz * t_cdf_next(arg);
    }

    // one-sided tail mass beyond z0 (z0 <= -1 left, z0 >= 1 right) via the
    // substitution z = z0/w, which maps the unbounded tail onto (0,1]
    double tail_mass(double z0) const {
        double az = std::fabs(z0);
        auto g = [&](double w) {
            double z = z0 / w;
            return pdf_z(z) * az / (w * w);
        };
        return integrate(g, std::vector<double>{0.0, 1e-4, 1e-2, 0.1, 0.5, 1.0}, 1e-11, 1e-15);
    }

    double cdf_z(double z) const {
        if (z <= -1.0) return tail_mass(z);
        if (z >= 1.0) return 1.0 - tail_mass(z);
        double base = tail_mass(-1.0);
        std::vector<double> pts;
        if (z > 0.0) pts = {-1.0, 0.0, z};
        else if (z > -1.0 + 1e-14) pts = {-1.0, z};
        else return base;
        return base + integrate([&](double t) { return pdf_z(t); }, pts, 1e-11, 1e-15);
    }

    double quantile_z(double p) const {
        double lo = -2.0, hi = 2.0;
        while (cdf_z(hi) < p && hi < 1e12) hi *= 2.0;
        while (cdf_z(lo) > p && lo > -1e12) lo *= 2.0;
        for (int i = 0; i < 200; ++i) {
            double mid = 0.5 * (lo + hi);
            if (hi - lo < 1e-10 * (1.0 + std::fabs(mid))) return mid;
            (cdf_z(mid) < p ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }

    double mode_z() const {
        // coarse scan, golden refinement, then a derivative-sign polish that
        // beats the flat-top plateau of value-only search
        int m = 257;
        double best = -4.0, best_v = -kInf;
        for (int i = 0; i < m; ++i) {
            double z = -4.0 + 8.0 * i / (m - 1);
            double v = pdf_z(z);
            if (v > best_v) {
                best_v = v;
                best = z;
            }
        }
        double step = 8.0 / (m - 1);
        double zc = golden_max([&](double z) { return pdf_z(z); }, best - step, best + step, 1e-12);
        double w = 1e-3 * (1.0 + std::fabs(zc));
        auto slope = [&](double z) { return fd_d1([&](double t) { return pdf_z(t); }, z, 1e-5 * (1.0 + std::fabs(z))); };
        double sl = slope(zc - w), sr = slope(zc + w);
        if (sl > 0.0 && sr < 0.0)
            return bisect_root(slope, zc - w, zc + w, 1e-13, 1e-13);
        return zc;
    }
};

}  // namespace detail

// Numeric-derivative step sizes for the skew-t family. The first-derivative
// step follows the cube-root rule; the second-derivative step is larger
// because the divided difference amplifies rounding error by 1/h^2.
inline double skewt_fd_step_d1(double x) {
    static const double h0 = std::cbrt(std::numeric_limits<double>::epsilon());
    return h0 * std::max(1.0, std::fabs(x));
}
inline double skewt_fd_step_d2(double x) {
    static const double h0 = std::pow(std::numeric_limits<double>::epsilon(), 1.0 / 6.0);
    return h0 * std::max(1.0, std::fabs(x));
}

inline DensityBundle make_bundle(const DistributionSpec& spec) {
    validate_spec(spec);
    const auto& p = spec.params;
    DensityBundle b;
    b.spec = spec;
    b.sampler = detail::make_sampler(spec);
    switch (spec.family) {
        case Family::gaussian: {
            double mu = p[0], sigma = p[1];
            b.mode = mu;
            b.support = {-detail::kInf, detail::kInf};
            b.pdf = [=](double x) { return norm_pdf((x - mu) / sigma) / sigma; };
            b.dpdf = [=](double x) {
                double z = (x - mu) / sigma;
                return -z * norm_pdf(z) / (sigma * sigma);
            };
            b.d2pdf = [=](double x) {
                double z = (x - mu) / sigma;
                return (z * z - 1.0) * norm_pdf(z) / (sigma * sigma * sigma);
            };
            b.cdf = [=](double x) { return norm_cdf((x - mu) / sigma); };
            b.quantile = [=](double q) { return mu + sigma * norm_quantile(q); };
            break;
        }
        case Family::student_t:
        case Family::cauchy: {
            double nu = spec.family == Family::cauchy ? 1.0 : p[0];
            double mu = spec.family == Family::cauchy ? p[0] : p[1];
            double sigma = spec.family == Family::cauchy ? p[1] : p[2];
            double c = std::exp(t_log_norm_const(nu));
            double e1 = (nu + 1.0) / nu, e2 = (nu + 2.0) / nu;
            b.mode = mu;
            b.support = {-detail::kInf, detail::kInf};
            b.pdf = [=](double x) {
                double z = (x - mu) / sigma;
                double w = 1.0 + z * z / nu;
                return c * std::pow(w, -0.5 * (nu + 1.0)) / sigma;
            };
            b.dpdf = [=](double x) {
                double z = (x - mu) / sigma;
                double w = 1.0 + z * z / nu;
                return -c * e1 * z * std::pow(w, -0.5 * (nu + 3.0)) / (sigma * sigma);
            };
            b.d2pdf = [=](double x) {
                double z = (x - mu) / sigma;
                double w = 1.0 + z * z / nu;
                return -c * e1 * (1.0 - e2 * z * z) * std::pow(w, -0.5 * (nu + 5.0)) /
                       (sigma * sigma * sigma);
            };
            b.cdf = [=](double x) { return t_cdf((x - mu) / sigma, nu); };
            b.quantile = [=](double q) { return mu + sigma * t_quantile(q, nu); };
            break;
        }
        case Family::log_normal: {
            double mu = p[0], sigma = p[1];
            b.mode = std::exp(mu - sigma * sigma);
            b.support = {0.0, detail::kInf};
            b.pdf = [=](double x) {
                if (x <= 0.0) return 0.0;
                double z = (std::log(x) - mu) / sigma;
                return norm_pdf(z) / (sigma * x);
            };
            b.dpdf = [=](double x) {
                if (x <= 0.0) return 0.0;
                double z = (std::log(x) - mu) / sigma;
                return -norm_pdf(z) * (z + sigma) / (sigma * sigma * x * x);
            };
            b.d2pdf = [=](double x) {
                if (x <= 0.0) return 0.0;
                double z = (std::log(x) - mu) / sigma;
                return norm_pdf(z) * (z * z + 3.0 * sigma * z + 2.0 * sigma * sigma - 1.0) /
                       (sigma * sigma * sigma * x * x * x);
            };
            b.cdf = [=](double x) { return x <= 0.0 ? 0.0 : norm_cdf((std::log(x) - mu) / sigma); };
            b.quantile = [=](double q) { return std::exp(mu + sigma * norm_quantile(q)); };
            break;
        }
        case Family::exponential: {
            double lam = p[0];
            b.mode = 0.0;
            b.support = {0.0, detail::kInf};
            b.pdf = [=](double x) { return x < 0.0 ? 0.0 : lam * std::exp(-lam * x); };
            b.dpdf = [=](double x) { return x < 0.0 ? 0.0 : -lam * lam * std::exp(-lam * x); };
            b.d2pdf = [=](double x) {
                return x < 0.0 ? 0.0 : lam * lam * lam * std::exp(-lam * x);
            };
            b.cdf = [=](double x) { return x < 0.0 ? 0.0 : -std::expm1(-lam * x); };
            b.quantile = [=](double q) { return -std::log1p(-q) / lam; };
            break;
        }
        case Family::skew_t: {
            double nu = p[0], s = p[1], mu = p[2], sigma = p[3];
            auto core = std::make_shared<detail::SkewTCore>(nu, s);
            b.mode = mu + sigma * core->mode_z();
            b.support = {-detail::kInf, detail::kInf};
            auto pdf = [=](double x) { return core->pdf_z((x - mu) / sigma) / sigma; };
            b.pdf = pdf;
            b.dpdf = [=](double x) { return fd_d1(pdf, x, skewt_fd_step_d1(x)); };
            b.d2pdf = [=](double x) { return fd_d2(pdf, x, skewt_fd_step_d2(x)); };
            b.cdf = [=](double x) { return core->cdf_z((x - mu) / sigma); };
            b.quantile = [=](double q) { return mu + sigma * core->quantile_z(q); };
            break;
        }
    }
    return b;
}

// Pearson kurtosis where a closed form is implemented; nullopt otherwise
// (StudentT requires nu > 4 for the fourth moment to exist).
inline std::optional<double> kurtosis(const DistributionSpec& spec) {
    validate_spec(spec);
    const auto& p = spec.params;
    switch (spec.family) {
        case Family::gaussian: return 3.0;
        case Family::student_t:
            if (p[0] > 4.0) return 3.0 + 6.0 / (p[0] - 4.0);
            return std::nullopt;
        case Family::log_normal: {
            double s2 = p[1] * p[1];
            return std::exp(4.0 * s2) + 2.0 * std::exp(3.0 * s2) + 3.0 * std::exp(2.0 * s2) - 3.0;
        }
        case Family::exponential: return 9.0;
        default: return std::nullopt;
    }
}

inline std::vector<double> sample(const DistributionSpec& spec, std::size_t n,
                                  std::uint64_t seed) {
    validate_spec(spec);
    if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
    return detail::make_sampler(spec)(n, seed);
}

}  // namespace tailpoint
