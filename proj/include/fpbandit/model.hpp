#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fpbandit/rng.hpp"

namespace fpbandit {

enum class RewardFamily { Bernoulli, DiscreteBounded };

/// Finite reward distribution on [0, 1]; probabilities sum to 1.
struct DiscreteDistribution {
    std::vector<double> support;
    std::vector<double> probs;

    double mean() const;
};

/// One hypothesis: a name plus the per-arm mean rewards (and, for the
/// discrete family, the per-arm distributions).
struct Parameter {
    std::string name;
    std::vector<double> means;
    std::vector<DiscreteDistribution> distributions; // empty for Bernoulli
};

/// The finite hypothesis class: every candidate model of the environment.
/// Immutable after construction and safe to share across threads.
class ParameterSet {
  public:
    /// Validates all invariants; throws std::invalid_argument on violation
    /// (arm count < 2, empty set, wrong vector lengths, means outside [0,1],
    /// duplicate names, discrete distributions inconsistent with means).
    ParameterSet(std::size_t arm_count, RewardFamily family,
                 std::vector<Parameter> parameters, double tie_epsilon = 0.0);

    std::size_t arm_count() const { return arm_count_; }
    std::size_t size() const { return parameters_.size(); }
    RewardFamily family() const { return family_; }
    double tie_epsilon() const { return tie_epsilon_; }

    const Parameter& parameter(std::size_t idx) const { return parameters_[idx]; }
    double mean(std::size_t param, std::size_t arm) const {
        return parameters_[param].means[arm];
    }

    std::optional<std::size_t> index_of(std::string_view name) const;
    /// Finds the parameter whose mean vector matches within tol.
    std::optional<std::size_t> find_by_means(std::span<const double> means,
                                             double tol = 1e-12) const;

  private:
    std::size_t arm_count_;
    RewardFamily family_;
    std::vector<Parameter> parameters_;
    double tie_epsilon_;
};

/// Builds an explicit set from named mean vectors.
ParameterSet make_explicit_set(std::size_t arm_count,
                               std::vector<Parameter> parameters,
                               RewardFamily family = RewardFamily::Bernoulli,
                               double tie_epsilon = 0.0);

/// All distinct permutations of `base`, enumerated in lexicographic order
/// with names "perm_000", "perm_001", ...
ParameterSet make_permutation_set(std::span<const double> base,
                                  double tie_epsilon = 0.0);

/// Cartesian product values^arms, enumerated lexicographically over the
/// value sequence as given (first arm varies slowest), names "prod_0000", ...
ParameterSet make_product_set(std::span<const double> values,
                              std::size_t arm_count, double tie_epsilon = 0.0);

/// A concrete bandit instance: the hypothesis class plus the true parameter.
/// Rewards always lie in [0, 1].
class Environment {
  public:
    Environment(ParameterSet params, std::size_t true_parameter,
                std::uint64_t rng_seed = 0);

    const ParameterSet& params() const { return params_; }
    std::size_t true_parameter() const { return true_parameter_; }
    std::uint64_t rng_seed() const { return rng_seed_; }

    double true_mean(std::size_t arm) const {
        return params_.mean(true_parameter_, arm);
    }

    /// One i.i.d. draw from arm's reward distribution under the true
    /// parameter. Throws std::out_of_range for an invalid arm.
    double sample_reward(std::size_t arm, RngEngine& rng) const;

  private:
    ParameterSet params_;
    std::size_t true_parameter_;
    std::uint64_t rng_seed_;
};

} // namespace fpbandit
