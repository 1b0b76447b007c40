// Release gate: one check per numbered criterion, one [PASS]/[FAIL] line
// each, zero exit only when every criterion passes or fails in a way the
// README documents as a known deviation (the reference values themselves
// are reproduced here; see README "Limitations").
//
// Usage: tailpoint_acceptance <path-to-cli-binary>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "tailpoint/tailpoint.hpp"

namespace tp = tailpoint;

namespace {

struct Outcome {
    bool pass = true;
    bool documented = false;  // failure is a known, documented deviation
    std::vector<std::string> notes;

    void fail(const std::string& why) {
        pass = false;
        notes.push_back(why);
    }
    void note(const std::string& what) { notes.push_back(what); }
};

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// ---------------------------------------------------------------- criterion 1
Outcome criterion_closed_form_cross_validation() {
    Outcome out;
    double t0 = now_seconds();
    std::vector<tp::DistributionSpec> specs = {tp::parse_spec("gaussian(mu=0,sigma=1)")};
    for (double nu : {1.0, 2.0, 3.0, 5.0, 10.0, 100.0})
        specs.push_back(tp::make_spec(tp::Family::student_t, {nu, 0.0, 1.0}));
    for (double mu : {0.0, 1.0})
        for (double sigma : {0.25, 0.5, 1.0})
            specs.push_back(tp::make_spec(tp::Family::log_normal, {mu, sigma}));

    double worst = 0.0;
    std::string worst_at;
    for (const tp::DistributionSpec& spec : specs) {
        tp::DensityBundle b = tp::make_bundle(spec);
        tp::ClosedPoints closed = *tp::closed_form_points(spec);
        for (tp::Side side : {tp::Side::left, tp::Side::right}) {
            const tp::ClosedSide& cs = side == tp::Side::left ? closed.left : closed.right;
            double ni = *tp::pinf(b, side);
            double nc = *tp::pmconv(b, side);
            double e1 = std::fabs(ni - *cs.pinf) / (1.0 + std::fabs(*cs.pinf));
            double e2 = std::fabs(nc - *cs.pmconv) / (1.0 + std::fabs(*cs.pmconv));
            for (double e : {e1, e2})
                if (e > worst) {
                    worst = e;
                    worst_at = tp::to_string(spec);
                }
            if (e1 > 1e-7)
                out.fail(fmt("pinf mismatch %.3g at %s", e1, tp::to_string(spec).c_str()));
            if (e2 > 1e-7)
                out.fail(fmt("pmconv mismatch %.3g at %s", e2, tp::to_string(spec).c_str()));
        }
    }
    double dt = now_seconds() - t0;
    out.note(fmt("13 specs, worst scaled error %.2e (%s), %.2f s", worst, worst_at.c_str(), dt));
    if (dt >= 5.0) out.fail(fmt("runtime %.2f s exceeds 5 s", dt));
    return out;
}

// ---------------------------------------------------------------- criterion 2
Outcome criterion_quoted_quantiles() {
    Outcome out;
    tp::DelimitingReport g = tp::report(tp::parse_spec("gaussian(mu=0,sigma=1)"));
    tp::DelimitingReport c = tp::report(tp::parse_spec("cauchy"));
    double g_conv = *g.right.cdf_pmconv, g_inf = *g.right.cdf_pinf;
    double c_inf = *c.right.cdf_pinf, c_conv = *c.right.cdf_pmconv;
    out.note(fmt("gaussian cdf(pmconv_r)=%.6f cdf(pinf_r)=%.6f; cauchy %.12f %.12f", g_conv,
                 g_inf, c_inf, c_conv));
    if (std::fabs(g_conv - 0.9584) > 5e-4) out.fail("gaussian pmconv level off");
    if (std::fabs(g_inf - 0.841) > 5e-4) out.fail("gaussian pinf level off");
    if (std::fabs(c_inf - 2.0 / 3.0) > 1e-9) out.fail("cauchy pinf level off");
    if (std::fabs(c_conv - 0.75) > 1e-9) out.fail("cauchy pmconv level off");
    return out;
}

// ---------------------------------------------------------------- criterion 3
Outcome criterion_exponential_curvature_formula() {
    Outcome out;
    bool only_documented_cells = true;
    for (double lam : {0.95, 1.0, 2.0, 5.0}) {
        tp::DensityBundle b = tp::make_bundle(tp::make_spec(tp::Family::exponential, {lam}));
        double numeric = *tp::pmcurv(b, tp::Side::right);
        double quoted = std::log(2.0 * std::pow(lam, 6.0)) / (2.0 * lam);
        double own = std::log(2.0 * std::pow(lam, 4.0)) / (2.0 * lam);
        double err = std::fabs(numeric - quoted);
        out.note(fmt("rate %.2f: argmax %.8f, quoted formula %.8f (|diff| %.2e), "
                     "stationarity solution %.8f (|diff| %.2e)",
                     lam, numeric, quoted, err, own, std::fabs(numeric - own)));
        if (err > 1e-6) {
            out.fail(fmt("rate %.2f off the quoted formula by %.3g", lam, err));
            if (std::fabs(lam - 1.0) < 1e-12) only_documented_cells = false;
        }
    }
    for (double lam : {0.1, 0.5}) {
        tp::DensityBundle b = tp::make_bundle(tp::make_spec(tp::Family::exponential, {lam}));
        double numeric = *tp::pmcurv(b, tp::Side::right);
        if (std::fabs(numeric) > 1e-8) {
            out.fail(fmt("rate %.2f: expected boundary argmax, got %.3g", lam, numeric));
            only_documented_cells = false;
        }
    }
    if (!out.pass && only_documented_cells) out.documented = true;
    return out;
}

// ---------------------------------------------------------------- criterion 4
Outcome criterion_curvature_convergence() {
    Outcome out;
    double prev = 1e300;
    for (double sigma : {1.0, 2.0, 5.0, 10.0, 100.0}) {
        tp::DensityBundle b = tp::make_bundle(tp::make_spec(tp::Family::gaussian, {0.0, sigma}));
        double target = std::sqrt(3.0) * sigma;
        double gap = std::fabs(*tp::pmcurv(b, tp::Side::right) - target) / target;
        out.note(fmt("sigma %6.1f: relative gap %.3e", sigma, gap));
        if (gap >= prev) out.fail(fmt("gap not decreasing at sigma %.1f", sigma));
        if (sigma == 100.0 && gap >= 1e-3) out.fail(fmt("gap %.3g at sigma 100 exceeds 1e-3", gap));
        prev = gap;
    }
    return out;
}

// ---------------------------------------------------------------- criterion 5
Outcome criterion_point_ordering() {
    Outcome out;
    tp::Rng rng(2718281828);
    int violations = 0, total = 0;
    for (int i = 0; i < 200; ++i) {
        tp::DistributionSpec spec;
        switch (i % 4) {
            case 0:
                spec = tp::make_spec(tp::Family::gaussian,
                                     {4.0 * rng.uniform() - 2.0, 0.1 + 9.9 * rng.uniform()});
                break;
            case 1:
                spec = tp::make_spec(tp::Family::student_t,
                                     {1.0 + 29.0 * rng.uniform(), 4.0 * rng.uniform() - 2.0,
                                      0.1 + 4.9 * rng.uniform()});
                break;
            case 2:
                spec = tp::make_spec(tp::Family::log_normal,
                                     {2.0 * rng.uniform() - 1.0, 0.1 + 1.1 * rng.uniform()});
                break;
            default:
                spec = tp::make_spec(tp::Family::skew_t,
                                     {1.0 + 19.0 * rng.uniform(), 20.0 * rng.uniform() - 10.0,
                                      2.0 * rng.uniform() - 1.0, 0.2 + 2.8 * rng.uniform()});
                break;
        }
        tp::DelimitingReport rep = tp::report(spec);
        ++total;
        bool ok = rep.left.pinf && rep.left.pmconv && rep.right.pinf && rep.right.pmconv &&
                  *rep.right.pmconv > *rep.right.pinf && *rep.right.pinf > rep.mode &&
                  rep.mode > *rep.left.pinf && *rep.left.pinf > *rep.left.pmconv;
        if (!ok) {
            ++violations;
            out.fail(fmt("ordering violated at %s", tp::to_string(spec).c_str()));
        }
    }
    out.note(fmt("%d draws, %d violations", total, violations));
    return out;
}

// ---------------------------------------------------------------- criterion 6
Outcome criterion_table_reproduction() {
    Outcome out;
    // reference MSE grids being reproduced (rows n=100,500,2000; cols nu=1,5,100)
    const std::array<std::array<double, 3>, 3> table1 = {
        {{0.245, 0.181, 0.189}, {0.113, 0.076, 0.062}, {0.054, 0.046, 0.035}}};
    const std::array<std::array<double, 3>, 3> table2 = {
        {{1.144, 0.893, 0.245}, {0.689, 0.494, 0.339}, {0.373, 0.297, 0.192}}};
    const std::vector<double> nus = {1.0, 5.0, 100.0};
    const std::vector<int> ns = {100, 500, 2000};

    double t0 = now_seconds();
    bool only_documented_cells = true;
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        for (tp::StudyTarget target : {tp::StudyTarget::pinf, tp::StudyTarget::pmconv}) {
            const auto& ref = target == tp::StudyTarget::pinf ? table1 : table2;
            const char* name = tp::study_target_name(target);
            tp::MseStudyConfig cfg;
            cfg.target = target;
            cfg.nu_values = nus;
            cfg.n_values = ns;
            cfg.replications = 1000;
            cfg.base_seed = seed;
            tp::MseStudy study = tp::run_mse_study(cfg);

            // cells arrive nu-major; index back into (n, nu) grid positions
            double sum = 0.0, ref_sum = 0.0;
            std::array<std::array<double, 3>, 3> got{};
            for (std::size_t i = 0; i < study.cells.size(); ++i) {
                std::size_t nu_i = i / ns.size(), n_i = i % ns.size();
                got[n_i][nu_i] = study.cells[i].mse;
                sum += study.cells[i].mse;
                ref_sum += ref[n_i][nu_i];
            }
            for (std::size_t n_i = 0; n_i < 3; ++n_i)
                for (std::size_t nu_i = 0; nu_i < 3; ++nu_i) {
                    double ratio = got[n_i][nu_i] / ref[n_i][nu_i];
                    out.note(fmt("seed %llu %-6s nu=%-3g n=%-4d mse %.3f ref %.3f ratio %.2f",
                                 static_cast<unsigned long long>(seed), name, nus[nu_i], ns[n_i],
                                 got[n_i][nu_i], ref[n_i][nu_i], ratio));
                    if (ratio < 0.5 || ratio > 2.0) {
                        out.fail(fmt("seed %llu %s nu=%g n=%d ratio %.2f outside [0.5, 2]",
                                     static_cast<unsigned long long>(seed), name, nus[nu_i],
                                     ns[n_i], ratio));
                        // the documented deviation is reduced variance on the
                        // higher-derivative target only
                        if (!(target == tp::StudyTarget::pmconv && ratio < 0.5))
                            only_documented_cells = false;
                    }
                }
            for (std::size_t nu_i = 0; nu_i < 3; ++nu_i)
                if (!(got[2][nu_i] < got[0][nu_i])) {
                    out.fail(fmt("seed %llu %s nu=%g: mse(n=2000) !< mse(n=100)",
                                 static_cast<unsigned long long>(seed), name, nus[nu_i]));
                    only_documented_cells = false;
                }
            // stash per-target means for the cross-table comparison
            if (target == tp::StudyTarget::pinf)
                out.notes.push_back(fmt("#mean1 %.6f", sum / 9.0));
            else
                out.notes.push_back(fmt("#mean2 %.6f", sum / 9.0));
        }
    }
    // mean Table-2 cell > mean Table-1 cell, per seed
    std::vector<double> m1, m2;
    for (std::string& s : out.notes) {
        if (s.rfind("#mean1 ", 0) == 0) m1.push_back(std::strtod(s.c_str() + 7, nullptr));
        if (s.rfind("#mean2 ", 0) == 0) m2.push_back(std::strtod(s.c_str() + 7, nullptr));
    }
    std::vector<std::string> kept;
    for (std::string& s : out.notes)
        if (s.rfind("#mean", 0) != 0) kept.push_back(std::move(s));
    out.notes = std::move(kept);
    for (std::size_t i = 0; i < m1.size(); ++i) {
        out.note(fmt("seed %zu: mean pinf mse %.3f, mean pmconv mse %.3f", i + 1, m1[i], m2[i]));
        if (!(m2[i] > m1[i])) {
            out.fail(fmt("seed %zu: mean pmconv mse not larger", i + 1));
            only_documented_cells = false;
        }
    }
    double dt = now_seconds() - t0;
    out.note(fmt("3 seeds x 2 targets x 9 cells x N=1000 in %.1f s", dt));
    if (dt >= 600.0) {
        out.fail(fmt("runtime %.0f s exceeds 600 s", dt));
        only_documented_cells = false;
    }
    if (!out.pass && only_documented_cells) out.documented = true;
    return out;
}

// ---------------------------------------------------------------- criterion 7
Outcome criterion_kde_unit_suite() {
    Outcome out;
    // Hermite table
    for (double x : {-2.0, -0.3, 0.0, 1.0, 2.5}) {
        if (tp::hermite(0, x) != 1.0) out.fail("H0");
        if (tp::hermite(1, x) != x) out.fail("H1");
        if (tp::hermite(2, x) != x * x - 1.0) out.fail("H2");
        if (std::fabs(tp::hermite(3, x) - (x * x * x - 3.0 * x)) >
            1e-15 * (1.0 + std::fabs(x * x * x)))
            out.fail("H3");
        if (std::fabs(tp::hermite(4, x) - (x * x * x * x - 6.0 * x * x + 3.0)) >
            1e-14 * (1.0 + std::fabs(x * x * x * x)))
            out.fail("H4");
    }
    // single-kernel closed forms
    tp::KdeModel d1({0.0}, 1, 1.0), d2({0.0}, 2, 1.0);
    for (double x : {-1.5, 0.5, 2.0}) {
        double want1 = -x * tp::norm_pdf(x);
        double want2 = (x * x - 1.0) * tp::norm_pdf(x);
        if (std::fabs(d1.eval(x) - want1) > 1e-12) out.fail("single-kernel d1");
        if (std::fabs(d2.eval(x) - want2) > 1e-12) out.fail("single-kernel d2");
    }
    if (std::fabs(tp::sample_point({0.0}, 0.0, tp::Side::right, 1, 1.0) - 1.0) > 1e-12)
        out.fail("single-kernel pinf_n landmark");
    if (std::fabs(tp::sample_point({0.0}, 0.0, tp::Side::right, 2, 1.0) - std::sqrt(3.0)) > 1e-12)
        out.fail("single-kernel pmconv_n landmark");
    // integrals
    tp::Rng rng(5);
    std::vector<double> data(60);
    for (double& v : data) v = rng.normal();
    double h = 0.4;
    tp::KdeModel f(data, 0, h), g(data, 1, h);
    double lo = *std::min_element(data.begin(), data.end()) - 10.0 * h;
    double hi = *std::max_element(data.begin(), data.end()) + 10.0 * h;
    std::vector<double> panels;
    for (int i = 0; i <= 16; ++i) panels.push_back(lo + (hi - lo) * i / 16.0);
    double mass = tp::integrate([&](double x) { return f.eval(x); }, panels, 1e-9);
    double dmass = tp::integrate([&](double x) { return g.eval(x); }, panels, 1e-9, 1e-12);
    out.note(fmt("density mass %.9f, derivative mass %.2e", mass, dmass));
    if (std::fabs(mass - 1.0) > 1e-6) out.fail("density does not integrate to 1");
    if (std::fabs(dmass) > 1e-6) out.fail("derivative does not integrate to 0");
    // roughness constants
    std::vector<double> rpanels = {-40.0, -8.0, -2.0, 0.0, 2.0, 8.0, 40.0};
    for (int r = 0; r <= 4; ++r) {
        double via_quad = tp::integrate(
            [r](double x) {
                double v = tp::hermite(r, x) * tp::norm_pdf(x);
                return v * v;
            },
            rpanels, 1e-13, 1e-16);
        double diff = std::fabs(tp::gaussian_kernel_roughness(r) - via_quad);
        if (diff > 1e-10) out.fail(fmt("roughness r=%d off by %.2e", r, diff));
    }
    if (out.pass) out.note("hermite table, single-kernel forms, integrals, roughness all good");
    return out;
}

// ---------------------------------------------------------------- criterion 8
Outcome criterion_sweep_behaviors() {
    Outcome out;
    tp::SweepTable ln = tp::run_sweep_preset("lognormal-sigma");
    for (std::size_t i = 1; i < ln.rows.size(); ++i) {
        if (!(*ln.rows[i].cdf_pmconv_r < *ln.rows[i - 1].cdf_pmconv_r))
            out.fail(fmt("lognormal cdf(pmconv_r) not decreasing at row %zu", i));
        if (!(*ln.rows[i].q95 > *ln.rows[i - 1].q95))
            out.fail(fmt("lognormal q95 not increasing at row %zu", i));
    }
    out.note(fmt("lognormal-sigma: cdf(pmconv_r) %.4f -> %.4f, q95 %.3f -> %.3f",
                 *ln.rows.front().cdf_pmconv_r, *ln.rows.back().cdf_pmconv_r,
                 *ln.rows.front().q95, *ln.rows.back().q95));

    tp::SweepTable st = tp::run_sweep_preset("studentt-nu");
    double prev_kurt = 1e300;
    for (std::size_t i = 1; i < st.rows.size(); ++i) {
        if (!(*st.rows[i].pinf_r > *st.rows[i - 1].pinf_r))
            out.fail(fmt("studentt pinf_r not increasing at row %zu", i));
        if (!(*st.rows[i].pmconv_r > *st.rows[i - 1].pmconv_r))
            out.fail(fmt("studentt pmconv_r not increasing at row %zu", i));
        if (st.rows[i].kurt) {
            if (!(*st.rows[i].kurt < prev_kurt))
                out.fail(fmt("studentt kurtosis not decreasing at row %zu", i));
            prev_kurt = *st.rows[i].kurt;
        }
    }
    out.note(fmt("studentt-nu: pinf_r %.4f -> %.4f, pmconv_r %.4f -> %.4f",
                 *st.rows.front().pinf_r, *st.rows.back().pinf_r, *st.rows.front().pmconv_r,
                 *st.rows.back().pmconv_r));

    tp::SweepTable sk = tp::run_sweep_preset("skewt-grid");
    const tp::SweepRow *sym = nullptr, *skw = nullptr;
    for (const tp::SweepRow& row : sk.rows) {
        if (row.key[0] == 3.0 && row.key[1] == 0.0) sym = &row;
        if (row.key[0] == 3.0 && row.key[1] == 10.0) skw = &row;
    }
    if (!sym || !skw || !sym->cdf_pinf_r || !skw->cdf_pinf_r) {
        out.fail("skewt-grid rows at (nu=3, s=0) / (nu=3, s=10) missing");
    } else {
        out.note(fmt("skewt-grid: cdf(pinf_r) at (3,10) = %.4f vs (3,0) = %.4f", *skw->cdf_pinf_r,
                     *sym->cdf_pinf_r));
        if (!(*skw->cdf_pinf_r < *sym->cdf_pinf_r))
            out.fail("skew does not pull the right inflection level down");
    }
    return out;
}

// ---------------------------------------------------------------- criterion 9
Outcome criterion_cli_determinism(const std::string& cli) {
    Outcome out;
    auto run = [&cli](const std::string& args) -> std::string {
        std::string cmd = cli + " " + args;
        FILE* pipe = popen(cmd.c_str(), "r");
        if (!pipe) return "<popen failed>";
        std::string text;
        char buf[4096];
        std::size_t got;
        while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) text.append(buf, got);
        int status = pclose(pipe);
        if (status != 0) return "<nonzero exit>";
        return text;
    };
    std::string a = run("simulate --reps 10 --seed 1");
    std::string b = run("simulate --reps 10 --seed 1");
    if (a.empty() || a[0] == '<') out.fail("cli run failed: " + a);
    if (a != b) out.fail("outputs differ between runs");
    out.note(fmt("two runs, %zu bytes each, byte-identical: %s", a.size(),
                 a == b ? "yes" : "no"));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <path-to-cli-binary>\n", argv[0]);
        return 2;
    }
    const std::string cli = argv[1];

    struct Entry {
        const char* label;
        Outcome outcome;
    };
    std::vector<Entry> entries;
    entries.push_back({"1. closed-form cross-validation (numeric vs formulas, < 5 s)",
                       criterion_closed_form_cross_validation()});
    entries.push_back({"2. quoted cdf levels (gaussian 0.9584/0.841, cauchy 2/3 & 3/4)",
                       criterion_quoted_quantiles()});
    entries.push_back({"3. exponential curvature argmax vs quoted formula",
                       criterion_exponential_curvature_formula()});
    entries.push_back({"4. curvature point converges to the convexity point",
                       criterion_curvature_convergence()});
    entries.push_back({"5. point ordering across 200 random draws", criterion_point_ordering()});
    entries.push_back({"6. MSE table reproduction (factor-2 band, 3 seeds, < 10 min)",
                       criterion_table_reproduction()});
    entries.push_back({"7. kde estimator unit suite", criterion_kde_unit_suite()});
    entries.push_back({"8. sweep behaviors (lognormal, studentt, skewt presets)",
                       criterion_sweep_behaviors()});
    entries.push_back({"9. cli simulate determinism", criterion_cli_determinism(cli)});

    int hard_failures = 0, documented_failures = 0;
    for (const Entry& e : entries) {
        const char* tag = e.outcome.pass ? "[PASS]" : "[FAIL]";
        std::printf("%s %s%s\n", tag, e.label,
                    !e.outcome.pass && e.outcome.documented
                        ? " (documented deviation, see README)"
                        : "");
        for (const std::string& n : e.outcome.notes) std::printf("       %s\n", n.c_str());
        if (!e.outcome.pass) {
            if (e.outcome.documented)
                ++documented_failures;
            else
                ++hard_failures;
        }
    }
    std::printf("summary: %zu criteria, %d passed, %d failed-as-documented, %d failed\n",
                entries.size(),
                static_cast<int>(entries.size()) - hard_failures - documented_failures,
                documented_failures, hard_failures);
    return hard_failures == 0 ? 0 : 1;
}
