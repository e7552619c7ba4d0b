#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "fixtures.hpp"
#include "fpbandit/analysis.hpp"
#include "fpbandit/policies.hpp"

using namespace fpbandit;
using namespace fpbandit::testing;

namespace {

std::vector<std::size_t> drive(Policy& pol, const Environment& env,
                               std::uint64_t horizon, std::uint64_t seed) {
    RngEngine rng(seed);
    std::vector<std::size_t> actions;
    for (std::uint64_t t = 0; t < horizon; ++t) {
        const std::size_t arm = pol.select();
        pol.update(arm, env.sample_reward(arm, rng));
        actions.push_back(arm);
    }
    return actions;
}

} // namespace

TEST_SUITE("policies") {

TEST_CASE("empirical mean") {
    CHECK(empirical_mean(3.0, 4) == 0.75);
    CHECK(empirical_mean(0.0, 7) == 0.0);
    CHECK(empirical_mean(5.0, 5) == 1.0);
}

TEST_CASE("episode set keeps exactly the consistent parameters") {
    const ParameterSet ps = two_arm_set();
    const std::vector<std::size_t> cand{0, 1};
    const std::vector<std::uint64_t> counts{50, 50};

    // radius = sqrt(3 ln 100 / 50) ~ 0.5257: theta2 fails at arm 0
    const std::vector<double> sharp{0.9, 0.5};
    CHECK(fpucb_episode_set(ps, cand, sharp, counts, 100) ==
          std::vector<std::size_t>{0});

    // both parameters within the radius
    const std::vector<double> vague{0.55, 0.5};
    CHECK(fpucb_episode_set(ps, cand, vague, counts, 100) ==
          std::vector<std::size_t>{0, 1});

    // k = 1: ln 1 = 0, zero radius forces exact matches
    const std::vector<double> off{0.85, 0.45};
    CHECK(fpucb_episode_set(ps, cand, off, counts, 1).empty());
    const std::vector<double> exact{0.2, 0.5};
    CHECK(fpucb_episode_set(ps, cand, exact, counts, 1) ==
          std::vector<std::size_t>{1});
}

TEST_CASE("true parameter always survives its own means") {
    RngEngine gen(41);
    for (int trial = 0; trial < 50; ++trial) {
        const ParameterSet ps = random_grid_set(gen);
        const std::size_t true_idx = gen.next_u64() % ps.size();
        const StructuralReport rep = analyze(ps, true_idx);
        std::vector<double> muhat;
        std::vector<std::uint64_t> counts;
        for (std::size_t arm : rep.candidate_arms) {
            muhat.push_back(ps.mean(true_idx, arm));
            counts.push_back(1 + gen.next_u64() % 100);
        }
        const std::uint64_t k = 2 + gen.next_u64() % 1000;
        const auto arms =
            fpucb_episode_set(ps, rep.candidate_arms, muhat, counts, k);
        CHECK(std::binary_search(arms.begin(), arms.end(), rep.true_best_arm));
    }
}

TEST_CASE("fp-ucb initialization plays the candidate set in order") {
    const ParameterSet ps = two_arm_set();
    FpUcbPolicy pol(ps);
    CHECK(pol.candidate_arms() == std::vector<std::size_t>{0, 1});
    const Environment env(ps, 0);
    const auto actions = drive(pol, env, 10, 5);
    CHECK(actions[0] == 0);
    CHECK(actions[1] == 1);
}

TEST_CASE("singleton candidate set pins the policy to one arm") {
    const ParameterSet ps =
        make_explicit_set(3, {{"only", {0.9, 0.1, 0.2}, {}}});
    FpUcbPolicy pol(ps);
    CHECK(pol.candidate_arms() == std::vector<std::size_t>{0});
    const Environment env(ps, 0);
    for (std::size_t a : drive(pol, env, 200, 7)) CHECK(a == 0);
}

TEST_CASE("fp-ucb picks only candidate arms and counts every step") {
    const ParameterSet ps = perm24_set();
    FpUcbPolicy pol(ps);
    const Environment env(ps, 0);
    const std::uint64_t T = 5000;
    const auto actions = drive(pol, env, T, 11);
    const auto& cand = pol.candidate_arms();
    for (std::size_t a : actions)
        CHECK(std::binary_search(cand.begin(), cand.end(), a));
    std::uint64_t total = 0;
    for (std::size_t arm = 0; arm < ps.arm_count(); ++arm)
        total += pol.pull_count(arm);
    CHECK(total == T);
}

TEST_CASE("episode log replays to the action sequence") {
    const ParameterSet ps = two_arm_set();
    FpUcbPolicy pol(ps);
    const Environment env(ps, 1);
    const std::uint64_t T = 3000;
    const auto actions = drive(pol, env, T, 13);
    const auto& log = pol.episode_log();
    CHECK(pol.episode_count() == log.size()); // T well under the log cap
    CHECK(pol.episode_count() <= T);

    const std::size_t A = pol.candidate_arms().size();
    std::uint64_t t = A; // initialization block
    for (std::size_t e = 0; e < log.size(); ++e) {
        CHECK(log[e].episode == e + 1);
        CHECK(log[e].start_time == t);
        // each episode plays A_k (or all of A on fallback), ascending
        CHECK((log[e].planned <= A));
        if (log[e].fallback) CHECK(log[e].planned == A);
        const std::uint64_t end =
            std::min<std::uint64_t>(t + log[e].planned, T);
        for (std::uint64_t s = t; s + 1 < end; ++s)
            CHECK(actions[s] < actions[s + 1]);
        t = end;
    }
    CHECK(t == T); // episodes plus initialization cover the horizon exactly
}

TEST_CASE("fp-ucb action sequence is reproducible") {
    const ParameterSet ps = two_arm_set();
    const Environment env(ps, 1);
    FpUcbPolicy a(ps), b(ps);
    CHECK(drive(a, env, 2000, 99) == drive(b, env, 2000, 99));
}

TEST_CASE("ucb1 index computation") {
    CHECK(ucb1_index(0.9, 10, 100) ==
          doctest::Approx(0.9 + std::sqrt(2.0 * std::log(100.0) / 10.0)));
    // (0.9, n=10) beats (0.5, n=10) at equal bonus
    CHECK(ucb1_index(0.9, 10, 100) > ucb1_index(0.5, 10, 100));
    // huge bonus of an unexplored arm wins despite the mean deficit
    CHECK(ucb1_index(0.0, 1, 101) > ucb1_index(0.6, 100, 101));
}

TEST_CASE("ucb1 explores the least pulled arm under equal means") {
    Ucb1Policy pol(2);
    // initialization: one pull each, reward 1 both
    CHECK(pol.select() == 0);
    pol.update(0, 1.0);
    CHECK(pol.select() == 1);
    pol.update(1, 1.0);
    // keep means equal but pull arm 0 more
    pol.update(0, 1.0);
    pol.update(0, 1.0);
    CHECK(pol.select() == 1);
}

TEST_CASE("thompson posterior update is conjugate") {
    ThompsonPolicy pol(2, RngEngine(3));
    pol.update(0, 1.0);
    CHECK(pol.posterior_a(0) == 2.0);
    CHECK(pol.posterior_b(0) == 1.0);
    pol.update(0, 0.0);
    CHECK(pol.posterior_a(0) == 2.0);
    CHECK(pol.posterior_b(0) == 2.0);
    // interior rewards are binarized: a+b still advances by exactly 1
    pol.update(1, 0.5);
    CHECK(pol.posterior_a(1) + pol.posterior_b(1) == 3.0);
    CHECK((pol.posterior_a(1) == 1.0 || pol.posterior_a(1) == 2.0));
}

TEST_CASE("thompson is symmetric at the first step") {
    std::vector<int> first(4, 0);
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
        ThompsonPolicy pol(4, RngEngine(seed));
        first[pol.select()] += 1;
    }
    for (int c : first) CHECK(c > 0);
}

TEST_CASE("thompson follows a decisive posterior") {
    ThompsonPolicy pol(2, RngEngine(29));
    for (int i = 0; i < 999; ++i) {
        pol.update(0, 1.0);
        pol.update(1, 0.0);
    }
    // Beta(1000,1) vs Beta(1,1000)
    int arm0 = 0;
    for (int i = 0; i < 1000; ++i)
        if (pol.select() == 0) ++arm0;
    CHECK(arm0 >= 999);
}

TEST_CASE("policy factory") {
    const ParameterSet ps = two_arm_set();
    CHECK(make_policy("fp-ucb", ps, RngEngine(1)) != nullptr);
    CHECK(make_policy("ucb1", ps, RngEngine(1)) != nullptr);
    CHECK(make_policy("thompson", ps, RngEngine(1)) != nullptr);
    CHECK_THROWS_AS(make_policy("epsilon-greedy", ps, RngEngine(1)),
                    std::invalid_argument);
    CHECK(policy_id("fp-ucb") == 0);
    CHECK(policy_id("ucb1") == 1);
    CHECK(policy_id("thompson") == 2);
    CHECK(policy_id("nope") == -1);
}

} // TEST_SUITE
