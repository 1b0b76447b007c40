#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace tailpoint {

// 7-point Gauss / 15-point Kronrod pair on [-1,1].
namespace gk {
inline constexpr double xk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                                 0.741531185599394, 0.586087235467691, 0.405845151377397,
                                 0.207784955007898, 0.000000000000000};
inline constexpr double wk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                                 0.140653259715525, 0.169004726639267, 0.190350578064785,
                                 0.204432940075298, 0.209482141084728};
inline constexpr double wg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                                 0.417959183673469};
}  // namespace gk

struct PanelEstimate {
    double a, b, value, error;
};

template <typename F>
PanelEstimate gk15(F&& f, double a, double b) {
    double c = 0.5 * (a + b), half = 0.5 * (b - a);
    double fc = f(c);
    double k = gk::wk[7] * fc;
    double g = gk::wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        double dx = half * gk::xk[i];
        double s = f(c - dx) + f(c + dx);
        k += gk::wk[i] * s;
        if (i % 2 == 1) g += gk::wg[i / 2] * s;
    }
    k *= half;
    g *= half;
    return {a, b, k, std::fabs(k - g)};
}

// Adaptive integration over the panels defined by `points` (sorted, >= 2
// entries). The worst panel is bisected until the summed error estimate meets
// max(abs_tol, rel_tol*|integral|). Seeding with interior breakpoints keeps
// sharply localized mass visible on very wide domains.
template <typename F>
double integrate(F&& f, const std::vector<double>& points, double rel_tol = 1e-10,
                 double abs_tol = 1e-14, int max_splits = 4000) {
    if (points.size() < 2) throw std::invalid_argument("integrate: need at least 2 breakpoints");
    auto worse = [](const PanelEstimate& x, const PanelEstimate& y) { return x.error < y.error; };
    std::priority_queue<PanelEstimate, std::vector<PanelEstimate>, decltype(worse)> heap(worse);
    double value = 0.0, error = 0.0;
    for (size_t i = 0; i + 1 < points.size(); ++i) {
        if (!(points[i] < points[i + 1]))
            throw std::invalid_argument("integrate: breakpoints must be strictly increasing");
        PanelEstimate p = gk15(f, points[i], points[i + 1]);
        value += p.value;
        error += p.error;
        heap.push(p);
    }
    for (int split = 0; split < max_splits; ++split) {
        if (error <= std::max(abs_tol, rel_tol * std::fabs(value))) return value;
        PanelEstimate worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) continue;  // panel at rounding limit
        PanelEstimate l = gk15(f, worst.a, mid);
        PanelEstimate r = gk15(f, mid, worst.b);
        value += l.value + r.value - worst.value;
        error += l.error + r.error - worst.error;
        heap.push(l);
        heap.push(r);
    }
    if (error <= std::max(abs_tol * 10.0, rel_tol * 10.0 * std::fabs(value))) return value;
    throw std::runtime_error("integrate: adaptive refinement did not converge");
}

template <typename F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-10, double abs_tol = 1e-14,
                 int max_splits = 4000) {
    return integrate(f, std::vector<double>{a, b}, rel_tol, abs_tol, max_splits);
}

}  // namespace tailpoint
