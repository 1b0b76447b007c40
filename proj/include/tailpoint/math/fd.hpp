#pragma once

#include <cmath>

namespace tailpoint {

// Richardson-extrapolated central differences (5-point stencils, O(h^4)).

template <typename F>
double fd_d1(F&& f, double x, double h) {
    return (-f(x + 2 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2 * h)) / (12.0 * h);
}

template <typename F>
double fd_d2(F&& f, double x, double h) {
    return (-f(x + 2 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2 * h)) /
           (12.0 * h * h);
}

}  // namespace tailpoint
