#include "fpbandit/rng.hpp"

#include <cmath>

namespace fpbandit {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint32_t policy_id,
                          std::uint64_t run_index) {
    std::uint64_t s = splitmix64(base_seed);
    s = splitmix64(s ^ (0x9E3779B97F4A7C15ULL * (policy_id + 1)));
    s = splitmix64(s ^ (0xD1B54A32D192ED03ULL * (run_index + 1)));
    return s;
}

double RngEngine::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double mul = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * mul;
    has_spare_ = true;
    return u * mul;
}

double RngEngine::gamma(double shape) {
    // shape >= 1 is all this artifact needs (Beta posteriors start at 1).
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform01();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
            return d * v;
    }
}

double RngEngine::beta(double a, double b) {
    const double x = gamma(a);
    const double y = gamma(b);
    return x / (x + y);
}

} // namespace fpbandit
