#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace cusp {

/// Seeded generator with platform-stable real draws.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    double normal() {
        double u = unit();
        while (u <= 0.0) u = unit();
        double v = unit();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
    }

    int index(int n) { return static_cast<int>(gen_() % static_cast<std::uint64_t>(n)); }

private:
    std::mt19937_64 gen_;
};

}  // namespace cusp
