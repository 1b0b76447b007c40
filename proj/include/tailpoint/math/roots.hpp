#pragma once

#include <cmath>
#include <stdexcept>

namespace tailpoint {

// Bisection for a root of f bracketed by [a,b]; f(a) and f(b) must have
// opposite signs. Converges to |b-a| < xtol_abs + xtol_rel*|x|.
template <typename F>
double bisect_root(F&& f, double a, double b, double xtol_abs, double xtol_rel = 0.0) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) throw std::invalid_argument("bisect_root: no sign change");
    for (int i = 0; i < 400; ++i) {
        double mid = 0.5 * (a + b);
        if (b - a < xtol_abs + xtol_rel * std::fabs(mid) || mid <= a || mid >= b)
            return mid;
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (fa > 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

// Golden-section maximization of f on [a,b]; assumes one interior maximum.
template <typename F>
double golden_max(F&& f, double a, double b, double xtol_abs, double xtol_rel = 0.0) {
    constexpr double inv_phi = 0.6180339887498948482;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < 400; ++i) {
        double mid = 0.5 * (a + b);
        if (b - a < xtol_abs + xtol_rel * std::fabs(mid)) break;
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace tailpoint
