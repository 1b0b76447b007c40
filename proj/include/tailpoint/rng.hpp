#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "tailpoint/math/special.hpp"

namespace tailpoint {

namespace detail {
inline std::uint64_t splitmix_scramble(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace detail

// Order-sensitive fold of integer parts into one 64-bit seed.
inline std::uint64_t seed_hash(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t p : parts) {
        h ^= detail::splitmix_scramble(p + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }
    return detail::splitmix_scramble(h);
}

inline std::uint64_t seed_part(double v) { return std::bit_cast<std::uint64_t>(v); }

// SplitMix64 stream. Normal variates come from the inverse cdf, so every
// draw consumes exactly one stream step and sequences stay reproducible.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return detail::splitmix_scramble(state_);
    }

    // uniform on the open interval (0,1)
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54;
    }

    double normal() { return norm_quantile(uniform()); }

    double exponential(double rate) { return -std::log(uniform()) / rate; }

    // Marsaglia-Tsang; shape < 1 boosted via the Gamma(shape+1) identity
    double gamma(double shape) {
        if (!(shape > 0.0)) throw std::invalid_argument("gamma: shape must be positive");
        if (shape < 1.0) {
            double g = gamma(shape + 1.0);
            return g * std::pow(uniform(), 1.0 / shape);
        }
        double d = shape - 1.0 / 3.0;
        double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double t = 1.0 + c * x;
            if (t <= 0.0) continue;
            double v = t * t * t;
            double u = uniform();
            double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
            if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    double chi_squared(double dof) { return 2.0 * gamma(0.5 * dof); }

    double student_t(double nu) { return normal() / std::sqrt(chi_squared(nu) / nu); }

  private:
    std::uint64_t state_;
};

}  // namespace tailpoint
