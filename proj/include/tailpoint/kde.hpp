#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "tailpoint/delimiting.hpp"
#include "tailpoint/distributions.hpp"
#include "tailpoint/math/fd.hpp"
#include "tailpoint/math/quadrature.hpp"
#include "tailpoint/math/roots.hpp"
#include "tailpoint/math/special.hpp"

namespace tailpoint {

// Probabilists' Hermite polynomial He_r(x) via the three-term recurrence.
inline double hermite(int r, double x) {
    if (r < 0 || r > 10) throw std::invalid_argument("hermite: order must be in [0, 10]");
    if (r == 0) return 1.0;
    double hm = 1.0, h = x;
    for (int k = 1; k < r; ++k) {
        double next = x * h - k * hm;
        hm = h;
        h = next;
    }
    return h;
}

namespace detail {

template <int R>
inline double hermite_fixed(double u) {
    if constexpr (R == 0) return 1.0;
    if constexpr (R == 1) return u;
    if constexpr (R == 2) return u * u - 1.0;
    if constexpr (R == 3) return u * (u * u - 3.0);
    if constexpr (R == 4) return (u * u - 6.0) * u * u + 3.0;
    return 0.0;
}

template <int R>
double kernel_sum_fixed(const double* d, std::size_t lo, std::size_t hi, double x, double inv_h) {
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
        double u = (x - d[i]) * inv_h;
        acc += hermite_fixed<R>(u) * std::exp(-0.5 * u * u);
    }
    return acc;
}

// Sum of He_r((x - X_i)/h) * exp(-u^2/2) over the (optionally windowed)
// sample, accumulated in ascending index order for determinism. Beyond
// |u| > 38 the Gaussian factor underflows, so the window drops nothing.
inline double kernel_deriv_sum(const std::vector<double>& sorted, double x, double h, int r,
                               bool cutoff) {
    std::size_t lo = 0, hi = sorted.size();
    if (cutoff) {
        double w = 38.0 * h;
        lo = std::lower_bound(sorted.begin(), sorted.end(), x - w) - sorted.begin();
        hi = std::upper_bound(sorted.begin(), sorted.end(), x + w) - sorted.begin();
    }
    const double* d = sorted.data();
    double inv_h = 1.0 / h;
    switch (r) {
        case 0: return kernel_sum_fixed<0>(d, lo, hi, x, inv_h);
        case 1: return kernel_sum_fixed<1>(d, lo, hi, x, inv_h);
        case 2: return kernel_sum_fixed<2>(d, lo, hi, x, inv_h);
        case 3: return kernel_sum_fixed<3>(d, lo, hi, x, inv_h);
        case 4: return kernel_sum_fixed<4>(d, lo, hi, x, inv_h);
        default: {
            double acc = 0.0;
            for (std::size_t i = lo; i < hi; ++i) {
                double u = (x - d[i]) * inv_h;
                acc += hermite(r, u) * std::exp(-0.5 * u * u);
            }
            return acc;
        }
    }
}

inline double kernel_prefactor(std::size_t n, double h, int r) {
    double sign = r % 2 == 0 ? 1.0 : -1.0;
    return sign * kInvSqrt2Pi / (static_cast<double>(n) * std::pow(h, r + 1));
}

}  // namespace detail

// Gaussian-kernel density estimate of f^(r); data are sorted at construction.
class KdeModel {
   public:
    KdeModel(std::vector<double> data, int order, double bandwidth, bool tail_cutoff = true)
        : data_(std::move(data)), order_(order), bandwidth_(bandwidth), cutoff_(tail_cutoff) {
        if (data_.empty()) throw std::invalid_argument("KdeModel: need at least one data point");
        if (order_ < 0 || order_ > 2)
            throw std::invalid_argument("KdeModel: derivative order must be in {0, 1, 2}");
        if (!(bandwidth_ > 0.0)) throw std::invalid_argument("KdeModel: bandwidth must be > 0");
        for (double v : data_)
            if (!std::isfinite(v)) throw std::invalid_argument("KdeModel: data must be finite");
        std::sort(data_.begin(), data_.end());
    }

    double eval(double x) const {
        return detail::kernel_prefactor(data_.size(), bandwidth_, order_) *
               detail::kernel_deriv_sum(data_, x, bandwidth_, order_, cutoff_);
    }

    const std::vector<double>& data() const { return data_; }
    int order() const { return order_; }
    double bandwidth() const { return bandwidth_; }

   private:
    std::vector<double> data_;
    int order_;
    double bandwidth_;
    bool cutoff_;
};

// R(phi^(r)) = (2r)! / (4^r r! 2 sqrt(pi)), accumulated as a product of
// half-integer factors so every intermediate stays exactly representable.
inline double gaussian_kernel_roughness(int r) {
    if (r < 0 || r > 10)
        throw std::invalid_argument("gaussian_kernel_roughness: order must be in [0, 10]");
    double acc = 1.0;
    for (int k = 1; k <= r; ++k) acc *= k - 0.5;
    return acc / (2.0 * std::sqrt(kPi));
}

// Roughness of the order-m derivative of a N(0, sigma^2) density.
inline double normal_reference_roughness(int m, double sigma) {
    if (!(sigma > 0.0))
        throw std::invalid_argument("normal_reference_roughness: sigma must be > 0");
    return gaussian_kernel_roughness(m) / std::pow(sigma, 2 * m + 1);
}

// Asymptotically MSE-optimal bandwidth for estimating f^(r) at a point:
// h = [ (2r+1) R(K^(r)) / R(f^(r+2)) ]^{1/(2r+5)} * n^{-1/(2r+5)}.
inline double amise_bandwidth(int r, std::size_t n, double target_roughness) {
    if (r < 0) throw std::invalid_argument("amise_bandwidth: order must be >= 0");
    if (n == 0) throw std::invalid_argument("amise_bandwidth: need n >= 1");
    if (!(target_roughness > 0.0) || !std::isfinite(target_roughness))
        throw std::invalid_argument("amise_bandwidth: roughness must be positive and finite");
    double num = (2.0 * r + 1.0) * gaussian_kernel_roughness(r);
    double expo = 1.0 / (2.0 * r + 5.0);
    return std::pow(num / target_roughness, expo) * std::pow(static_cast<double>(n), -expo);
}

// Integral of (f^(order))^2 over the support, with quadrature panels seeded
// at fixed probability levels so localized mass is never stepped over.
// Orders 3 and 4 differentiate d2pdf by central differences.
inline double true_roughness(const DensityBundle& b, int order) {
    if (order < 2 || order > 4)
        throw std::invalid_argument("true_roughness: derivative order must be in {2, 3, 4}");
    auto deriv = [&b, order](double x) -> double {
        if (order == 2) return b.d2pdf(x);
        if (order == 3) return fd_d1(b.d2pdf, x, 1e-3 * (1.0 + std::fabs(x)));
        return fd_d2(b.d2pdf, x, 5e-3 * (1.0 + std::fabs(x)));
    };
    auto integrand = [&deriv](double x) {
        double v = deriv(x);
        return v * v;
    };
    static const double levels[] = {1e-8, 1e-6, 1e-4, 1e-2, 0.1,    0.3,   0.5,
                                    0.7,  0.9,  0.99, 0.9999, 0.999999, 0.99999999};
    std::vector<double> pts;
    for (double p : levels) {
        double q = b.quantile(p);
        if (std::isfinite(q) && (pts.empty() || q > pts.back())) pts.push_back(q);
    }
    if (pts.size() < 2) throw std::runtime_error("true_roughness: degenerate quantile panel set");
    return integrate(integrand, pts, 1e-8, 1e-30, 8000);
}

namespace detail {

// Argmax of sign * f_n^(r) over log-spaced offsets on one side of the mode,
// refined by bisecting the sign of the analytic (r+1)-th KDE derivative.
// Operates on the right side; callers handle the left by reflection.
inline double sample_argmax_right(const std::vector<double>& sorted, double mode, int r, double h,
                                  double sign) {
    double hi_x = sorted.back() + 5.0 * h;
    double width = hi_x - mode;
    if (!(width > 0.0))
        throw std::invalid_argument("sample estimator: no data on the requested side of the mode");
    const int m = 2048;
    const double lr = std::log(1e-7);
    auto obj = [&](double x) {
        return sign * kernel_prefactor(sorted.size(), h, r) * kernel_deriv_sum(sorted, x, h, r, true);
    };
    int jmax = 0;
    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> xs(m);
    for (int i = 0; i < m; ++i) {
        double u = width * std::exp(lr * (1.0 - static_cast<double>(i) / (m - 1)));
        xs[i] = mode + u;
        double v = obj(xs[i]);
        if (v > best) {
            best = v;
            jmax = i;
        }
    }
    double a = jmax == 0 ? mode + 0.5 * (xs[0] - mode) : xs[jmax - 1];
    double b = jmax == m - 1 ? xs[m - 1] : xs[jmax + 1];
    // stationarity: sign * f_n^(r+1) crosses from + to - at the maximum
    double pref = sign * kernel_prefactor(sorted.size(), h, r + 1);
    auto slope = [&](double x) { return pref * kernel_deriv_sum(sorted, x, h, r + 1, true); };
    double sa = slope(a), sb = slope(b);
    if (sa > 0.0 && sb < 0.0)
        return bisect_root(slope, a, b, 1e-13, 1e-13);
    return golden_max(obj, a, b, 1e-12, 1e-12);
}

}  // namespace detail

// Nonparametric delimiting-point estimator: the side-constrained argmax of
// -f_n' (r = 1, inflection analogue) or f_n'' (r = 2, convexity analogue).
// The left side maps to the right side of the negated sample, so the two
// sides are exact mirror images.
inline double sample_point(const std::vector<double>& data, double mode_estimate, Side side, int r,
                           double h) {
    if (r != 1 && r != 2)
        throw std::invalid_argument("sample_point: derivative order must be 1 or 2");
    if (!(h > 0.0)) throw std::invalid_argument("sample_point: bandwidth must be > 0");
    if (data.empty()) throw std::invalid_argument("sample_point: need at least one data point");
    std::vector<double> sorted;
    sorted.reserve(data.size());
    double flip = side == Side::right ? 1.0 : -1.0;
    for (double v : data) {
        if (!std::isfinite(v)) throw std::invalid_argument("sample_point: data must be finite");
        sorted.push_back(flip * v);
    }
    std::sort(sorted.begin(), sorted.end());
    double mode = flip * mode_estimate;
    double sign = r == 1 ? -1.0 : 1.0;
    double x = detail::sample_argmax_right(sorted, mode, r, h, sign);
    return flip * x;
}

struct SampleBandwidths {
    double h1, h2;  // for the r = 1 and r = 2 estimators
};
struct SamplePoints {
    double pinf_n, pmconv_n;
};

inline SamplePoints sample_delimiting_points(const std::vector<double>& data, double mode_estimate,
                                             Side side, const SampleBandwidths& bw) {
    return {sample_point(data, mode_estimate, side, 1, bw.h1),
            sample_point(data, mode_estimate, side, 2, bw.h2)};
}

// KDE mode estimate: argmax of f_n under a normal-reference bandwidth,
// scanned on median-anchored log grids toward both sample extremes.
inline double estimate_mode(const std::vector<double>& data) {
    if (data.empty()) throw std::invalid_argument("estimate_mode: need at least one data point");
    if (data.size() == 1) return data[0];
    std::vector<double> sorted(data);
    std::sort(sorted.begin(), sorted.end());
    double n = static_cast<double>(sorted.size());
    double mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : sorted) ss += (v - mean) * (v - mean);
    double sd = std::sqrt(ss / (n - 1.0));
    if (!(sd > 0.0)) return sorted[0];
    double h = amise_bandwidth(0, sorted.size(), normal_reference_roughness(2, sd));
    double med = sorted[sorted.size() / 2];
    auto f = [&](double x) {
        return detail::kernel_prefactor(sorted.size(), h, 0) *
               detail::kernel_deriv_sum(sorted, x, h, 0, true);
    };
    double best_x = med, best_v = f(med);
    const int m = 1024;
    const double lr = std::log(1e-7);
    for (double dir : {1.0, -1.0}) {
        double far = dir > 0 ? sorted.back() + 5.0 * h : sorted.front() - 5.0 * h;
        double width = dir * (far - med);
        if (!(width > 0.0)) continue;
        for (int i = 0; i < m; ++i) {
            double u = width * std::exp(lr * (1.0 - static_cast<double>(i) / (m - 1)));
            double x = med + dir * u;
            double v = f(x);
            if (v > best_v) {
                best_v = v;
                best_x = x;
            }
        }
    }
    // refine by bisecting the sign of f_n'
    double pref = detail::kernel_prefactor(sorted.size(), h, 1);
    auto slope = [&](double x) { return pref * detail::kernel_deriv_sum(sorted, x, h, 1, true); };
    double a = best_x - h, b = best_x + h;
    if (slope(a) > 0.0 && slope(b) < 0.0)
        return bisect_root(slope, a, b, 1e-12, 1e-12);
    return golden_max(f, a, b, 1e-12, 1e-12);
}

// Plain-text or single-column CSV reader: one value per line, '#' comments,
// blank lines ignored, at most one non-numeric header line tolerated.
inline std::vector<double> read_data_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open data file: " + path);
    std::vector<double> out;
    std::string line;
    std::size_t line_no = 0;
    bool header_skipped = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        const char* s = line.c_str() + start;
        char* end = nullptr;
        double v = std::strtod(s, &end);
        bool ok = end != s;
        if (ok) {
            while (*end == ' ' || *end == '\t') ++end;
            ok = *end == '\0';
        }
        if (!ok) {
            if (!header_skipped && out.empty()) {
                header_skipped = true;
                continue;
            }
            throw std::invalid_argument("data file " + path + ": line " +
                                        std::to_string(line_no) + " is not a number: '" + line +
                                        "'");
        }
        if (!std::isfinite(v))
            throw std::invalid_argument("data file " + path + ": line " +
                                        std::to_string(line_no) + " is not finite");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("data file " + path + ": no numeric values");
    return out;
}

}  // namespace tailpoint
