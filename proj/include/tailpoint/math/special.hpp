#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tailpoint {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kSqrt2 = 1.414213562373095048801688724209698079;
inline constexpr double kSqrt2Pi = 2.506628274631000502415765284811045253;
inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934381868;

inline double norm_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

inline double norm_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

// Inverse standard normal cdf: rational initial guess (Acklam) plus one
// Halley step, giving full double accuracy across (0,1).
inline double norm_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("norm_quantile: p must be in (0,1)");
    static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                    -2.759285104469687e+02, 1.383577518672690e+02,
                                    -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                    -1.556989798598866e+02, 6.680131188771972e+01,
                                    -1.328068155288572e+01};
    static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                    -2.400758277161838e+00, -2.549732539343734e+00,
                                    4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                    2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double plow = 0.02425;
    double x;
    if (p < plow) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p > 1.0 - plow) {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else {
        double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }
    // Halley refinement on Phi(x) - p
    double e = norm_cdf(x) - p;
    double u = e / norm_pdf(x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

namespace detail {
inline double beta_cont_frac(double aa, double bb, double xx) {
        constexpr double tiny = 1e-300;
        constexpr double eps = std::numeric_limits<double>::epsilon();
        double qab = aa + bb, qap = aa + 1.0, qam = aa - 1.0;
        double cc = 1.0;
        double dd = 1.0 - qab * xx / qap;
        if (std::fabs(dd) < tiny) dd = tiny;
        dd = 1.0 / dd;
        double h = dd;
        for (int m = 1; m <= 300; ++m) {
            int m2 = 2 * m;
            double aa1 = m * (bb - m) * xx / ((qam + m2) * (aa + m2));
            dd = 1.0 + aa1 * dd;
            if (std::fabs(dd) < tiny) dd = tiny;
            cc = 1.0 + aa1 / cc;
            if (std::fabs(cc) < tiny) cc = tiny;
            dd = 1.0 / dd;
            h *= dd * cc;
            double aa2 = -(aa + m) * (qab + m) * xx / ((aa + m2) * (qap + m2));
            dd = 1.0 + aa2 * dd;
            if (std::fabs(dd) < tiny) dd = tiny;
            cc = 1.0 + aa2 / cc;
            if (std::fabs(cc) < tiny) cc = tiny;
            dd = 1.0 / dd;
            double del = dd * cc;
            h *= del;
            if (std::fabs(del - 1.0) < 3.0 * eps) return h;
        }
        throw std::runtime_error("ibeta: continued fraction did not converge");
}
}  // namespace detail

// Regularized incomplete beta I_x(a,b) with the log-beta term precomputed,
// for hot paths that evaluate many x at fixed (a,b).
struct IncompleteBeta {
    double a, b, ln_beta;
    IncompleteBeta(double a_, double b_) : a(a_), b(b_) {
        if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("ibeta: a,b must be positive");
        ln_beta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    }
    double operator()(double x) const {
        if (x <= 0.0) return 0.0;
        if (x >= 1.0) return 1.0;
        double front = std::exp(a * std::log(x) + b * std::log1p(-x) - ln_beta);
        if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::beta_cont_frac(a, b, x) / a;
        return 1.0 - front * detail::beta_cont_frac(b, a, 1.0 - x) / b;
    }
};

inline double ibeta(double a, double b, double x) { return IncompleteBeta(a, b)(x); }

// Student-t cdf; nu=1 takes the arctangent closed form so that the Cauchy
// family evaluates through the identical code path.
inline double t_cdf(double x, double nu) {
    if (!(nu > 0.0)) throw std::invalid_argument("t_cdf: nu must be positive");
    if (nu == 1.0) return 0.5 + std::atan(x) / kPi;
    if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
    if (x * x <= nu) {
        // center form: nu/(nu + x^2) rounds to 1 for tiny x, so pass the
        // complement x^2/(nu + x^2), which keeps full precision near 0
        double half = 0.5 * ibeta(0.5, 0.5 * nu, x * x / (nu + x * x));
        return x >= 0.0 ? 0.5 + half : 0.5 - half;
    }
    double p = 0.5 * ibeta(0.5 * nu, 0.5, nu / (nu + x * x));
    return x > 0.0 ? 1.0 - p : p;
}

// log of the Student-t normalizing constant Gamma((nu+1)/2)/(Gamma(nu/2) sqrt(nu pi))
inline double t_log_norm_const(double nu) {
    return std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) - 0.5 * std::log(nu * kPi);
}

inline double t_pdf(double x, double nu) {
    double w = 1.0 + x * x / nu;
    return std::exp(t_log_norm_const(nu) - 0.5 * (nu + 1.0) * std::log(w));
}

inline double t_quantile(double p, double nu) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("t_quantile: p must be in (0,1)");
    if (p == 0.5) return 0.0;
    if (nu == 1.0) return std::tan(kPi * (p - 0.5));
    // expanding bracket then bisection on a monotone cdf
    double lo = -2.0, hi = 2.0;
    while (t_cdf(hi, nu) < p) {
        hi *= 2.0;
        if (hi > 1e306) break;
    }
    while (t_cdf(lo, nu) > p) {
        lo *= 2.0;
        if (lo < -1e306) break;
    }
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (hi - lo < 1e-10 * (1.0 + std::fabs(mid))) return mid;
        (t_cdf(mid, nu) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace tailpoint
