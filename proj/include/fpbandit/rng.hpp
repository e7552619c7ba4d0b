#pragma once

#include <cstdint>
#include <random>

namespace fpbandit {

/// splitmix64 finalizer. Used to mix seeds, never as a stream generator.
std::uint64_t splitmix64(std::uint64_t x);

/// Derives the seed for one (policy, run) pair from the campaign base seed.
///
/// The derivation is fixed so results are reproducible across platforms and
/// so that adding a policy to a campaign never perturbs the streams of the
/// other policies: seeds depend on a stable per-policy id, not on the
/// position of the policy in the requested list.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint32_t policy_id,
                          std::uint64_t run_index);

/// Deterministic random stream: std::mt19937_64 (engine output is specified
/// by the standard) plus hand-rolled samplers, so draws do not depend on the
/// standard library's unspecified distribution implementations.
class RngEngine {
  public:
    explicit RngEngine(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform double in [0, 1) with 53-bit resolution.
    double uniform01() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Standard normal via the Marsaglia polar method (one spare cached).
    double normal();

    /// Gamma(shape, 1) for shape >= 1, Marsaglia-Tsang squeeze method.
    double gamma(double shape);

    /// Beta(a, b) for a, b >= 1 as Ga / (Ga + Gb).
    double beta(double a, double b);

  private:
    std::mt19937_64 eng_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

} // namespace fpbandit
