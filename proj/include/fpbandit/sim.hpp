#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fpbandit/model.hpp"

namespace fpbandit {

/// One seeded run: cumulative pseudo-regret sampled at the checkpoint
/// schedule (gap increments, so the curve is nonnegative and nondecreasing).
struct Trajectory {
    std::vector<std::uint64_t> checkpoints; // ascending, last entry == T
    std::vector<double> regret;             // aligned with checkpoints
    double final_regret = 0.0;
    std::vector<std::uint64_t> pull_counts; // per arm, at T
    std::uint64_t episode_count = 0;        // FP-UCB only, else 0
};

/// Cross-run aggregates for a list of policies on one instance.
struct BatchResult {
    std::vector<std::string> policies;
    std::vector<std::uint64_t> checkpoints;
    std::vector<std::vector<double>> mean;   // [policy][checkpoint]
    std::vector<std::vector<double>> stddev; // population std over runs
    std::vector<double> final_mean;
    std::vector<double> final_std;
    std::vector<std::vector<double>> mean_pull_counts; // [policy][arm]
    std::vector<double> mean_episode_count;
    std::vector<double> wall_seconds; // summed across runs, per policy
    std::uint64_t horizon = 0;
    std::uint64_t runs = 0;
    std::uint64_t base_seed = 0;
};

/// Every step up to 10^3, then multiplicative spacing (ratio 1.02); the
/// final step T is always included.
std::vector<std::uint64_t> checkpoint_schedule(std::uint64_t horizon);

/// Seeds of the two streams run_trajectory derives from one run seed: the
/// reward draws and the policy's own randomness. Part of the reproducibility
/// contract.
std::uint64_t reward_stream_seed(std::uint64_t run_seed);
std::uint64_t policy_stream_seed(std::uint64_t run_seed);

/// Plays T steps of `policy` against the environment. Deterministic in
/// (env, policy, T, seed). Requires T >= L so initialization can finish.
/// When action_log is non-null the full action sequence is appended to it.
Trajectory run_trajectory(const Environment& env, std::string_view policy,
                          std::uint64_t horizon, std::uint64_t seed,
                          std::vector<std::size_t>* action_log = nullptr);

/// Runs `runs` seeded trajectories per policy and aggregates. Run r of
/// policy p uses derive_seed(base_seed, policy_id(p), r), so results do not
/// depend on list order. Executes runs in parallel (threads = 0 picks
/// FPBANDIT_THREADS or the hardware count) but aggregates in run order, so
/// output is bit-identical to sequential execution.
BatchResult run_batch(const Environment& env,
                      const std::vector<std::string>& policies,
                      std::uint64_t horizon, std::uint64_t runs,
                      std::uint64_t base_seed, unsigned threads = 0);

/// Pointwise regret(t) / ln(t). All entries of `times` must be >= 2.
std::vector<double> scaled_regret(std::span<const std::uint64_t> times,
                                  std::span<const double> curve);

/// CSV rows `policy,t,mean_regret,std_regret`, one per (policy, checkpoint).
void write_csv(std::ostream& os, const BatchResult& result);

unsigned resolve_thread_count(unsigned requested);

} // namespace fpbandit
