#include "fpbandit/sim.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "fpbandit/analysis.hpp"
#include "fpbandit/policies.hpp"

namespace fpbandit {

namespace {

// Stream tags so the reward and policy streams of one run never collide.
constexpr std::uint64_t kRewardStream = 0x7265776172640001ULL;
constexpr std::uint64_t kPolicyStream = 0x706f6c6963790002ULL;

} // namespace

std::uint64_t reward_stream_seed(std::uint64_t run_seed) {
    return splitmix64(run_seed ^ kRewardStream);
}

std::uint64_t policy_stream_seed(std::uint64_t run_seed) {
    return splitmix64(run_seed ^ kPolicyStream);
}

std::vector<std::uint64_t> checkpoint_schedule(std::uint64_t horizon) {
    std::vector<std::uint64_t> cps;
    const std::uint64_t dense = std::min<std::uint64_t>(horizon, 1000);
    for (std::uint64_t t = 1; t <= dense; ++t) cps.push_back(t);
    std::uint64_t t = dense;
    while (t < horizon) {
        t = std::max(t + 1, static_cast<std::uint64_t>(
                                std::ceil(static_cast<double>(t) * 1.02)));
        cps.push_back(std::min(t, horizon));
    }
    // powers of ten are always sampled exactly
    for (std::uint64_t p = 10; p <= horizon && p != 0; p *= 10)
        cps.push_back(p);
    std::sort(cps.begin(), cps.end());
    cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
    if (cps.back() != horizon) cps.push_back(horizon);
    return cps;
}

Trajectory run_trajectory(const Environment& env, std::string_view policy,
                          std::uint64_t horizon, std::uint64_t seed,
                          std::vector<std::size_t>* action_log) {
    const ParameterSet& params = env.params();
    const std::size_t L = params.arm_count();
    if (horizon < L)
        throw std::invalid_argument(
            "horizon shorter than the arm count; initialization impossible");
    if (policy_id(policy) < 0)
        throw std::invalid_argument("unknown policy '" + std::string(policy) +
                                    "'");

    RngEngine reward_rng(reward_stream_seed(seed));
    RngEngine policy_rng(policy_stream_seed(seed));
    auto pol = make_policy(policy, params, policy_rng);

    const std::size_t star = best_arm(params, env.true_parameter());
    const double mu_star = params.mean(env.true_parameter(), star);
    std::vector<double> gap(L);
    for (std::size_t i = 0; i < L; ++i)
        gap[i] = mu_star - params.mean(env.true_parameter(), i);

    Trajectory traj;
    traj.checkpoints = checkpoint_schedule(horizon);
    traj.regret.reserve(traj.checkpoints.size());
    traj.pull_counts.assign(L, 0);

    double cum = 0.0;
    std::size_t next_cp = 0;
    for (std::uint64_t t = 1; t <= horizon; ++t) {
        const std::size_t arm = pol->select();
        const double reward = env.sample_reward(arm, reward_rng);
        pol->update(arm, reward);
        cum += gap[arm];
        traj.pull_counts[arm] += 1;
        if (action_log) action_log->push_back(arm);
        if (t == traj.checkpoints[next_cp]) {
            traj.regret.push_back(cum);
            ++next_cp;
        }
    }
    traj.final_regret = cum;
    traj.episode_count = pol->episode_count();
    return traj;
}

unsigned resolve_thread_count(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("FPBANDIT_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

BatchResult run_batch(const Environment& env,
                      const std::vector<std::string>& policies,
                      std::uint64_t horizon, std::uint64_t runs,
                      std::uint64_t base_seed, unsigned threads) {
    if (runs < 1) throw std::invalid_argument("run count must be >= 1");
    for (const std::string& p : policies)
        if (policy_id(p) < 0)
            throw std::invalid_argument("unknown policy '" + p + "'");

    const std::size_t np = policies.size();
    std::vector<std::vector<Trajectory>> trajs(np);
    std::vector<std::vector<double>> run_seconds(np);
    for (std::size_t p = 0; p < np; ++p) {
        trajs[p].resize(runs);
        run_seconds[p].assign(runs, 0.0);
    }

    // Independent tasks into preallocated slots; aggregation below is
    // sequential in run order, so scheduling cannot affect the result.
    std::atomic<std::size_t> next{0};
    const std::size_t total = np * runs;
    auto worker = [&] {
        for (;;) {
            const std::size_t task = next.fetch_add(1);
            if (task >= total) return;
            const std::size_t p = task / runs;
            const std::uint64_t r = task % runs;
            const std::uint64_t seed = derive_seed(
                base_seed, static_cast<std::uint32_t>(policy_id(policies[p])),
                r);
            const auto start = std::chrono::steady_clock::now();
            trajs[p][r] = run_trajectory(env, policies[p], horizon, seed);
            run_seconds[p][r] =
                std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start)
                    .count();
        }
    };
    const unsigned n_threads =
        std::min<unsigned>(resolve_thread_count(threads),
                           static_cast<unsigned>(total));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }

    BatchResult res;
    res.policies = policies;
    res.checkpoints = checkpoint_schedule(horizon);
    res.horizon = horizon;
    res.runs = runs;
    res.base_seed = base_seed;
    const std::size_t ncp = res.checkpoints.size();
    const double R = static_cast<double>(runs);

    for (std::size_t p = 0; p < np; ++p) {
        std::vector<double> mean(ncp, 0.0), sd(ncp, 0.0);
        for (std::uint64_t r = 0; r < runs; ++r)
            for (std::size_t c = 0; c < ncp; ++c)
                mean[c] += trajs[p][r].regret[c];
        for (std::size_t c = 0; c < ncp; ++c) mean[c] /= R;
        for (std::uint64_t r = 0; r < runs; ++r)
            for (std::size_t c = 0; c < ncp; ++c) {
                const double d = trajs[p][r].regret[c] - mean[c];
                sd[c] += d * d;
            }
        for (std::size_t c = 0; c < ncp; ++c) sd[c] = std::sqrt(sd[c] / R);

        std::vector<double> pulls(env.params().arm_count(), 0.0);
        double episodes = 0.0, seconds = 0.0;
        for (std::uint64_t r = 0; r < runs; ++r) {
            for (std::size_t a = 0; a < pulls.size(); ++a)
                pulls[a] += static_cast<double>(trajs[p][r].pull_counts[a]);
            episodes += static_cast<double>(trajs[p][r].episode_count);
            seconds += run_seconds[p][r];
        }
        for (double& v : pulls) v /= R;

        res.final_mean.push_back(mean.back());
        res.final_std.push_back(sd.back());
        res.mean.push_back(std::move(mean));
        res.stddev.push_back(std::move(sd));
        res.mean_pull_counts.push_back(std::move(pulls));
        res.mean_episode_count.push_back(episodes / R);
        res.wall_seconds.push_back(seconds);
    }
    return res;
}

std::vector<double> scaled_regret(std::span<const std::uint64_t> times,
                                  std::span<const double> curve) {
    if (times.size() != curve.size())
        throw std::invalid_argument("times and curve lengths differ");
    std::vector<double> out(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 2)
            throw std::invalid_argument("scaled regret requires t >= 2");
        out[i] = curve[i] / std::log(static_cast<double>(times[i]));
    }
    return out;
}

void write_csv(std::ostream& os, const BatchResult& result) {
    os << "policy,t,mean_regret,std_regret\n";
    char buf[64];
    for (std::size_t p = 0; p < result.policies.size(); ++p) {
        for (std::size_t c = 0; c < result.checkpoints.size(); ++c) {
            os << result.policies[p] << ',' << result.checkpoints[c] << ',';
            std::snprintf(buf, sizeof(buf), "%.12g", result.mean[p][c]);
            os << buf << ',';
            std::snprintf(buf, sizeof(buf), "%.12g", result.stddev[p][c]);
            os << buf << '\n';
        }
    }
}

} // namespace fpbandit
