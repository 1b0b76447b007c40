#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "tailpoint/distributions.hpp"
#include "tailpoint/math/fd.hpp"
#include "tailpoint/math/roots.hpp"

namespace tailpoint {

enum class Side { left, right };
enum class PointMethod { closed_form, numeric };

struct SidePoints {
    std::optional<double> pinf, pmconv, pmcurv;
    std::optional<double> cdf_pinf, cdf_pmconv, cdf_pmcurv;
    PointMethod method_pinf = PointMethod::numeric;
    PointMethod method_pmconv = PointMethod::numeric;
    PointMethod method_pmcurv = PointMethod::numeric;
};

struct DelimitingReport {
    DistributionSpec spec;
    double mode = 0.0;
    SidePoints left, right;
    std::optional<std::pair<double, double>> modal_region_inf;   // [pinf_l, pinf_r]
    std::optional<std::pair<double, double>> modal_region_conv;  // [pmconv_l, pmconv_r]
    bool tie_flag = false;  // grid scan saw near-equal competing maxima
};

// Signed curvature of the density graph; zero outside the support.
inline double curvature(const DensityBundle& b, double t) {
    if (t < b.support.lo || t > b.support.hi) return 0.0;
    double d1 = b.dpdf(t);
    double d2 = b.d2pdf(t);
    return d2 / std::pow(1.0 + d1 * d1, 1.5);
}

namespace detail {

// One-sided search region, parameterized by the outward distance u from the
// mode: x = mode + dir*u with u in [u_min, u_max]. The domain is truncated at
// the 1e-9 / 1-1e-9 quantiles and excludes the mode itself by a small offset.
struct SideDomain {
    double mode;
    double dir;  // +1 right, -1 left
    double u_min, u_max;
    bool empty;
};

inline SideDomain side_domain(const DensityBundle& b, Side side) {
    SideDomain d;
    d.mode = b.mode;
    d.dir = side == Side::right ? 1.0 : -1.0;
    d.u_min = 1e-12 * (1.0 + std::fabs(b.mode));
    double far = side == Side::right ? b.quantile(1.0 - 1e-9) : b.quantile(1e-9);
    d.u_max = d.dir * (far - b.mode);
    d.empty = !(d.u_max > d.u_min);
    return d;
}

inline double domain_x(const SideDomain& d, double u) { return d.mode + d.dir * u; }

// log-spaced outward distances, dense near the mode
inline std::vector<double> log_grid(double u_min, double u_max, int m) {
    std::vector<double> u(m);
    double lr = std::log(u_max / u_min);
    for (int i = 0; i < m; ++i) u[i] = u_min * std::exp(lr * i / (m - 1));
    return u;
}

// Derivative-sign polish: the golden-section result sits on a rounding
// plateau of width ~sqrt(eps); bisecting the sign of the objective slope
// recovers several more digits. Falls back to x_hat if no sign change.
template <typename G>
double polish_argmax(G&& g, double x_hat, double lo_bound, double hi_bound) {
    double span = std::min(x_hat - lo_bound, hi_bound - x_hat);
    double h = std::min(1e-3 * (1.0 + std::fabs(x_hat)), span / 8.0);
    if (!(h > 0.0)) return x_hat;
    auto slope = [&](double x) { return fd_d1(g, x, h); };
    double a = x_hat - 4.0 * h, b = x_hat + 4.0 * h;
    double sa = slope(a), sb = slope(b);
    if (sa > 0.0 && sb < 0.0)
        return bisect_root(slope, a, b, 1e-12, 1e-12);
    return x_hat;
}

// Grid scan + golden section + polish for the side-constrained argmax of g.
// Returns the point and whether competing near-equal maxima were seen.
template <typename G>
std::pair<double, bool> argmax_on_side(G&& g, const SideDomain& d, int m = 513) {
    std::vector<double> u = log_grid(d.u_min, d.u_max, m);
    std::vector<double> v(m);
    int jmax = 0;
    for (int i = 0; i < m; ++i) {
        v[i] = g(domain_x(d, u[i]));
        if (v[i] > v[jmax]) jmax = i;
    }
    // competing local maxima within 1e-12 of the best value
    bool tie = false;
    int jpick = jmax;
    double tol = 1e-12 * std::max(1.0, std::fabs(v[jmax]));
    for (int i = 1; i + 1 < m; ++i) {
        if (std::abs(i - jmax) <= 1) continue;
        if (v[i] >= v[i - 1] && v[i] >= v[i + 1] && v[jmax] - v[i] <= tol) {
            tie = true;
            if (u[i] < u[jpick]) jpick = i;
        }
    }
    jmax = jpick;
    double a_u = jmax == 0 ? 0.5 * u[0] : u[jmax - 1];
    double b_u = jmax == m - 1 ? u[m - 1] : u[jmax + 1];
    // map to x-space with correct ordering on either side
    double x_lo = std::min(domain_x(d, a_u), domain_x(d, b_u));
    double x_hi = std::max(domain_x(d, a_u), domain_x(d, b_u));
    double x_hat = golden_max(g, x_lo, x_hi, 1e-10, 1e-10);
    x_hat = polish_argmax(g, x_hat, x_lo, x_hi);
    return {x_hat, tie};
}

}  // namespace detail

// Side-constrained root of f'' nearest the mode; absent when f'' does not
// change sign on the side (monotone-convex tails such as the exponential).
inline std::optional<double> pinf(const DensityBundle& b, Side side) {
    detail::SideDomain d = detail::side_domain(b, side);
    if (d.empty) return std::nullopt;
    const int m = 513;
    std::vector<double> u = detail::log_grid(d.u_min, d.u_max, m);
    double prev_x = detail::domain_x(d, u[0]);
    double prev_v = b.d2pdf(prev_x);
    for (int i = 1; i < m; ++i) {
        double x = detail::domain_x(d, u[i]);
        double v = b.d2pdf(x);
        if (prev_v == 0.0) return prev_x;
        if ((prev_v < 0.0) != (v < 0.0)) {
            double lo = std::min(prev_x, x), hi = std::max(prev_x, x);
            return bisect_root([&](double t) { return b.d2pdf(t); }, lo, hi, 1e-10, 1e-10);
        }
        prev_x = x;
        prev_v = v;
    }
    return std::nullopt;
}

namespace detail {

// Shared argmax wrapper handling the boundary-supremum convention: when the
// mode sits on the support edge and the grid maximum is at the innermost
// point, the supremum is the boundary itself and the boundary is reported.
template <typename G>
std::optional<double> side_argmax(const DensityBundle& b, Side side, G&& g, bool& tie_flag) {
    SideDomain d = side_domain(b, side);
    if (d.empty) return std::nullopt;
    bool mode_on_boundary = (side == Side::right && b.mode <= b.support.lo) ||
                            (side == Side::left && b.mode >= b.support.hi);
    if (mode_on_boundary) {
        // decide between the boundary supremum and an interior maximum
        const int m = 513;
        std::vector<double> u = log_grid(d.u_min, d.u_max, m);
        int jmax = 0;
        double best = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
            double v = g(domain_x(d, u[i]));
            if (v > best) {
                best = v;
                jmax = i;
            }
        }
        if (jmax == 0) return b.mode;
    }
    auto [x, tie] = argmax_on_side(g, d);
    tie_flag = tie_flag || tie;
    return x;
}

}  // namespace detail

inline std::optional<double> pmconv(const DensityBundle& b, Side side) {
    bool tie = false;
    return detail::side_argmax(b, side, [&](double x) { return b.d2pdf(x); }, tie);
}

inline std::optional<double> pmcurv(const DensityBundle& b, Side side) {
    bool tie = false;
    return detail::side_argmax(b, side, [&](double x) { return curvature(b, x); }, tie);
}

struct ClosedSide {
    std::optional<double> pinf, pmconv, pmcurv;
};
struct ClosedPoints {
    ClosedSide left, right;
};

// Exact formula values for the families that admit them; nullopt for the
// skew-t family, which is handled numerically throughout.
inline std::optional<ClosedPoints> closed_form_points(const DistributionSpec& spec) {
    validate_spec(spec);
    const auto& p = spec.params;
    ClosedPoints out;
    switch (spec.family) {
        case Family::gaussian: {
            double mu = p[0], sigma = p[1];
            out.left.pinf = mu - sigma;
            out.right.pinf = mu + sigma;
            out.left.pmconv = mu - std::sqrt(3.0) * sigma;
            out.right.pmconv = mu + std::sqrt(3.0) * sigma;
            return out;
        }
        case Family::student_t:
        case Family::cauchy: {
            double nu = spec.family == Family::cauchy ? 1.0 : p[0];
            double mu = spec.family == Family::cauchy ? p[0] : p[1];
            double sigma = spec.family == Family::cauchy ? p[1] : p[2];
            double a = sigma * std::sqrt(nu / (nu + 2.0));
            double c = sigma * std::sqrt(3.0 * nu / (nu + 2.0));
            out.left.pinf = mu - a;
            out.right.pinf = mu + a;
            out.left.pmconv = mu - c;
            out.right.pmconv = mu + c;
            return out;
        }
        case Family::log_normal: {
            double mu = p[0], sigma = p[1];
            double s2 = sigma * sigma;
            double rt_inf = sigma * std::sqrt(s2 + 4.0);
            double rt_conv = sigma * std::sqrt(3.0 + s2);
            out.left.pinf = std::exp(0.5 * (2.0 * mu - 3.0 * s2 - rt_inf));
            out.right.pinf = std::exp(0.5 * (2.0 * mu - 3.0 * s2 + rt_inf));
            out.left.pmconv = std::exp(mu - 2.0 * s2 - rt_conv);
            out.right.pmconv = std::exp(mu - 2.0 * s2 + rt_conv);
            return out;
        }
        case Family::exponential: {
            double lam = p[0];
            out.right.pmconv = 0.0;
            // argmax of the curvature: d/dx log kappa = 0 gives
            // 2 lam^4 exp(-2 lam x) = 1, interior iff lam > 2^(-1/4).
            // (A published variant with lam^6 and threshold 2^(-1/6) does not
            // satisfy that stationarity condition; see README.)
            if (lam > std::pow(2.0, -0.25))
                out.right.pmcurv = std::log(2.0 * lam * lam * lam * lam) / (2.0 * lam);
            else
                out.right.pmcurv = 0.0;
            return out;
        }
        case Family::skew_t: return std::nullopt;
    }
    return std::nullopt;
}

// Full per-side report; closed forms are preferred where registered and the
// numeric solver fills the rest.
inline DelimitingReport report(const DensityBundle& b) {
    DelimitingReport rep;
    rep.spec = b.spec;
    rep.mode = b.mode;
    std::optional<ClosedPoints> closed = closed_form_points(b.spec);
    for (Side side : {Side::left, Side::right}) {
        SidePoints& sp = side == Side::left ? rep.left : rep.right;
        const ClosedSide* cs = nullptr;
        if (closed) cs = side == Side::left ? &closed->left : &closed->right;
        detail::SideDomain dom = detail::side_domain(b, side);

        if (cs && cs->pinf) {
            sp.pinf = cs->pinf;
            sp.method_pinf = PointMethod::closed_form;
        } else if (!dom.empty) {
            sp.pinf = pinf(b, side);
        }
        if (cs && cs->pmconv) {
            sp.pmconv = cs->pmconv;
            sp.method_pmconv = PointMethod::closed_form;
        } else if (!dom.empty) {
            bool tie = false;
            sp.pmconv = detail::side_argmax(b, side, [&](double x) { return b.d2pdf(x); }, tie);
            rep.tie_flag = rep.tie_flag || tie;
        }
        if (cs && cs->pmcurv) {
            sp.pmcurv = cs->pmcurv;
            sp.method_pmcurv = PointMethod::closed_form;
        } else if (!dom.empty) {
            bool tie = false;
            sp.pmcurv = detail::side_argmax(b, side, [&](double x) { return curvature(b, x); }, tie);
            rep.tie_flag = rep.tie_flag || tie;
        }
        if (sp.pinf) sp.cdf_pinf = b.cdf(*sp.pinf);
        if (sp.pmconv) sp.cdf_pmconv = b.cdf(*sp.pmconv);
        if (sp.pmcurv) sp.cdf_pmcurv = b.cdf(*sp.pmcurv);
    }
    if (rep.left.pinf && rep.right.pinf)
        rep.modal_region_inf = std::make_pair(*rep.left.pinf, *rep.right.pinf);
    if (rep.left.pmconv && rep.right.pmconv)
        rep.modal_region_conv = std::make_pair(*rep.left.pmconv, *rep.right.pmconv);
    return rep;
}

inline DelimitingReport report(const DistributionSpec& spec) { return report(make_bundle(spec)); }

}  // namespace tailpoint
