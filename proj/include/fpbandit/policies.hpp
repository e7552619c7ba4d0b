#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "fpbandit/kernels.hpp"
#include "fpbandit/model.hpp"
#include "fpbandit/rng.hpp"

namespace fpbandit {

/// Sequential decision interface. The driver alternates select() / update()
/// exactly once per time step; states are single-threaded mutable objects.
class Policy {
  public:
    virtual ~Policy() = default;

    /// Arm to pull at the next time step.
    virtual std::size_t select() = 0;

    /// Reward feedback for the arm returned by the preceding select().
    virtual void update(std::size_t arm, double reward) = 0;

    /// Episodes started so far (0 for policies without episode structure).
    virtual std::uint64_t episode_count() const { return 0; }
};

/// mu_hat = reward_sum / count. count must be positive.
double empirical_mean(double reward_sum, std::uint64_t count);

/// UCB1 index: mean + sqrt(2 ln(t) / count).
double ucb1_index(double mean, std::uint64_t count, std::uint64_t t);

/// The arm set {a*(theta)} over all theta whose means are consistent with
/// the empirical means of every candidate arm at radius sqrt(3 ln k / n_i).
/// Returned ascending with duplicates collapsed; may be empty.
std::vector<std::size_t> fpucb_episode_set(const ParameterSet& params,
                                           std::span<const std::size_t> candidates,
                                           std::span<const double> muhat,
                                           std::span<const std::uint64_t> counts,
                                           std::uint64_t episode);

/// Finitely parameterized UCB. Plays each candidate arm once, then runs
/// episodes: compute the consistent arm set A_k, play it once through
/// (ascending), fall back to the whole candidate set when A_k is empty.
class FpUcbPolicy final : public Policy {
  public:
    explicit FpUcbPolicy(const ParameterSet& params);

    std::size_t select() override;
    void update(std::size_t arm, double reward) override;
    std::uint64_t episode_count() const override { return episode_; }

    const std::vector<std::size_t>& candidate_arms() const { return cand_; }
    std::uint64_t pull_count(std::size_t arm) const { return counts_[arm]; }

    struct EpisodeRecord {
        std::uint64_t episode;    // k
        std::uint64_t start_time; // t_k (steps completed when computed)
        std::uint32_t planned;    // |A_k|, or |A| on fallback
        bool fallback;            // A_k was empty
    };
    /// Bookkeeping trace of the first episodes (capped to bound memory on
    /// long horizons; episode_count() is exact regardless).
    const std::vector<EpisodeRecord>& episode_log() const { return episodes_; }
    static constexpr std::size_t kEpisodeLogCap = 1u << 20;

  private:
    void start_episode();

    std::vector<std::size_t> cand_;      // A, ascending
    std::vector<std::size_t> best_arm_;  // a*(theta) per parameter
    std::vector<double> cand_means_;     // arm-major [|A| x |Theta|]
    std::size_t n_params_;

    std::vector<std::uint64_t> counts_; // per arm
    std::vector<double> sums_;          // per arm

    std::vector<double> muhat_, radius_;   // per candidate slot, scratch
    std::vector<std::uint8_t> mask_;       // per parameter, scratch
    std::vector<std::uint8_t> arm_present_; // per arm, scratch

    std::vector<std::size_t> pending_;
    std::size_t pos_ = 0;
    std::uint64_t t_ = 0;       // completed steps
    std::uint64_t episode_ = 0; // k of the episode currently playing
    std::vector<EpisodeRecord> episodes_;
    kernels::ConsistencyFn kernel_;
};

/// Standard UCB1 over all L arms: after one pull of each arm, play
/// argmax mu_hat_i + sqrt(2 ln t / n_i), ties to the smallest index.
class Ucb1Policy final : public Policy {
  public:
    explicit Ucb1Policy(std::size_t arm_count);

    std::size_t select() override;
    void update(std::size_t arm, double reward) override;

  private:
    std::vector<std::uint64_t> counts_;
    std::vector<double> sums_;
    std::uint64_t t_ = 0;
};

/// Bernoulli Thompson sampling with uniform Beta(1,1) priors over all L
/// arms. Rewards strictly inside (0,1) are binarized by a Bernoulli draw
/// with that mean before the conjugate update.
class ThompsonPolicy final : public Policy {
  public:
    ThompsonPolicy(std::size_t arm_count, RngEngine rng);

    std::size_t select() override;
    void update(std::size_t arm, double reward) override;

    double posterior_a(std::size_t arm) const { return a_[arm]; }
    double posterior_b(std::size_t arm) const { return b_[arm]; }

  private:
    std::vector<double> a_, b_;
    RngEngine rng_;
};

inline constexpr std::string_view kPolicyNames[] = {"fp-ucb", "ucb1",
                                                    "thompson"};

/// Stable id used in seed derivation; independent of list position.
/// Returns -1 for an unknown name.
int policy_id(std::string_view name);

/// Factory by identifier; policy_rng is consumed only by policies that
/// randomize (Thompson). Throws std::invalid_argument for unknown names.
std::unique_ptr<Policy> make_policy(std::string_view name,
                                    const ParameterSet& params,
                                    RngEngine policy_rng);

} // namespace fpbandit
