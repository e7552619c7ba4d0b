#pragma once

#include <cstdint>
#include <vector>

#include "fpbandit/model.hpp"

namespace fpbandit {

enum class Regime { BoundedRegret, LogarithmicRegret };

/// Every structural quantity of one instance: candidate arms, confusion
/// sets, gaps and separations. Arm and parameter indices are 0-based.
struct StructuralReport {
    std::size_t true_parameter = 0;
    std::size_t true_best_arm = 0;

    std::vector<std::size_t> best_arm_per_parameter; // a*(theta), |Theta| long
    std::vector<std::size_t> candidate_arms;         // A, ascending
    std::vector<std::size_t> confusion_parameters;   // B, ascending indices
    std::vector<std::size_t> confusion_arms;         // C, ascending

    std::vector<double> gaps;        // aligned with candidate_arms
    std::vector<double> separations; // aligned with confusion_arms
    std::vector<double> alpha1;      // per parameter: |mu_a*(true) - mu_a*(theta)|

    /// Parameters whose best arm is not unique (ties broken by min index;
    /// listed so violations of the uniqueness assumption are visible).
    std::vector<std::size_t> non_unique_best;

    Regime regime = Regime::BoundedRegret;

    bool in_candidate_set(std::size_t arm) const;
    bool in_confusion_arms(std::size_t arm) const;
    /// Gap of an arm in A; throws if the arm is not a candidate.
    double gap_of(std::size_t arm) const;
};

/// Smallest-index arm attaining the maximum mean of parameter theta,
/// ties resolved within the set's tie_epsilon.
std::size_t best_arm(const ParameterSet& params, std::size_t theta);

/// Computes the full structural report for the instance (params, true_param).
StructuralReport analyze(const ParameterSet& params, std::size_t true_param);

/// Smallest integer k >= 3 with k > ceil(12 ln(k) / alpha^2), by linear scan.
/// Throws std::invalid_argument for alpha <= 0.
std::uint64_t k_threshold(double alpha);

/// max{3, ceil(144 / alpha^4)}: the episode-count bound entering the
/// closed-form constant.
std::uint64_t tail_episode_bound(double alpha);

/// One tabulated (arm, parameter) entry of the per-pair constants.
struct PairConstants {
    std::size_t arm = 0;
    std::size_t param = 0;
    double alpha = 0.0;
    std::uint64_t k_thresh = 0;
    std::uint64_t E = 0;
};

/// All regret-bound constants of one instance.
struct ConstantsReport {
    Regime regime = Regime::BoundedRegret;
    std::vector<PairConstants> pairs; // eligible (arm, theta) pairs

    std::vector<std::size_t> c_arms; // arms with a C_i bound
    std::vector<double> c_values;    // aligned with c_arms

    double D1 = 0.0;
    double D2 = 0.0;
    double log_coefficient = 0.0; // 12 * sum_{i in C} gap_i / sep_i^2
};

/// Tabulates the k/E thresholds, the closed-form C_i bounds, the constants
/// D1 and D2, and the log coefficient. Arms without a defined C_i (the true
/// best arm and the confusion arms) contribute 0 to D1/D2.
ConstantsReport constants(const StructuralReport& report,
                          const ParameterSet& params);

/// Regret upper bound at horizon T: D1 in the bounded regime, else
/// D2 + log_coefficient * ln(T).
double regret_upper_bound(const ConstantsReport& c, double T);

/// Exact partial sum  sum_{k=k0}^{k_max} 2|A| k / (k - ceil(12 ln k / a^2))^5
/// with k0 = k_threshold(alpha). Cross-check that the closed-form bound
/// dominates the episode sum it replaces.
double episode_tail_sum(double alpha, std::size_t candidate_count,
                        std::uint64_t k_max);

} // namespace fpbandit
