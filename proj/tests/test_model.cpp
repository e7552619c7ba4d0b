#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fixtures.hpp"
#include "fpbandit/model.hpp"

using namespace fpbandit;
using namespace fpbandit::testing;

TEST_SUITE("model") {

TEST_CASE("explicit set holds the declared instance") {
    const ParameterSet ps = two_arm_set();
    CHECK(ps.arm_count() == 2);
    CHECK(ps.size() == 2);
    CHECK(ps.mean(0, 0) == 0.9);
    CHECK(ps.mean(1, 1) == 0.5);
    CHECK(ps.index_of("theta2") == 1);
    CHECK(!ps.index_of("nope").has_value());
}

TEST_CASE("permutation generator enumerates all 24 orders") {
    const ParameterSet ps = perm24_set();
    CHECK(ps.size() == 24);
    CHECK(ps.arm_count() == 4);
    CHECK(ps.parameter(0).name == "perm_000");
    // lexicographic: first permutation is the ascending base
    CHECK(ps.parameter(0).means == std::vector<double>{0.2, 0.3, 0.4, 0.6});
    const std::vector<double> base{0.6, 0.4, 0.3, 0.2};
    CHECK(ps.find_by_means(base).has_value());
}

TEST_CASE("permutations of a multiset are deduplicated") {
    const std::vector<double> base{0.5, 0.5, 0.2};
    CHECK(make_permutation_set(base).size() == 3);
}

TEST_CASE("product generator enumerates 4^4 parameters") {
    const ParameterSet ps = product256_set();
    CHECK(ps.size() == 256);
    CHECK(ps.parameter(0).name == "prod_0000");
    const std::vector<double> target{0.4, 0.6, 0.3, 0.2};
    CHECK(ps.find_by_means(target).has_value());
}

TEST_CASE("construction rejects invalid input") {
    const std::vector<double> empty;
    CHECK_THROWS_AS(make_permutation_set(empty), std::invalid_argument);
    const std::vector<double> vals{0.3};
    CHECK_THROWS_AS(make_product_set(vals, 0), std::invalid_argument);
    CHECK_THROWS_AS(
        make_explicit_set(2, {{"a", {0.1, 0.2, 0.3}, {}}}),
        std::invalid_argument); // wrong length
    CHECK_THROWS_AS(make_explicit_set(2, {{"a", {0.1, 1.2}, {}}}),
                    std::invalid_argument); // mean outside [0,1]
    CHECK_THROWS_AS(
        make_explicit_set(2, {{"a", {0.1, 0.2}, {}}, {"a", {0.3, 0.4}, {}}}),
        std::invalid_argument); // duplicate name
    CHECK_THROWS_AS(make_explicit_set(1, {{"a", {0.5}, {}}}),
                    std::invalid_argument); // single arm
    CHECK_THROWS_AS(ParameterSet(2, RewardFamily::Bernoulli, {},
                                 /*tie_epsilon=*/0.0),
                    std::invalid_argument); // empty set
}

TEST_CASE("degenerate Bernoulli arms are deterministic") {
    const ParameterSet ps =
        make_explicit_set(2, {{"t", {1.0, 0.0}, {}}});
    const Environment env(ps, 0);
    RngEngine rng(3);
    for (int i = 0; i < 200; ++i) {
        CHECK(env.sample_reward(0, rng) == 1.0);
        CHECK(env.sample_reward(1, rng) == 0.0);
    }
    CHECK_THROWS_AS(env.sample_reward(2, rng), std::out_of_range);
}

TEST_CASE("Bernoulli sample mean obeys the law of large numbers") {
    const ParameterSet ps = make_explicit_set(2, {{"t", {0.5, 0.5}, {}}});
    const Environment env(ps, 0);
    RngEngine rng(12345);
    double sum = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) sum += env.sample_reward(0, rng);
    CHECK(std::abs(sum / n - 0.5) < 0.002);
}

TEST_CASE("equal seeds give bit-identical reward streams") {
    const Environment env(two_arm_set(), 1);
    RngEngine a(99), b(99);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t arm = i % 2;
        CHECK(env.sample_reward(arm, a) == env.sample_reward(arm, b));
    }
}

TEST_CASE("sampled rewards stay in [0,1]") {
    RngEngine gen(5);
    for (int trial = 0; trial < 20; ++trial) {
        const ParameterSet ps = random_grid_set(gen);
        const Environment env(ps, gen.next_u64() % ps.size());
        RngEngine rng(trial);
        for (int i = 0; i < 500; ++i) {
            const double r =
                env.sample_reward(rng.next_u64() % ps.arm_count(), rng);
            CHECK(r >= 0.0);
            CHECK(r <= 1.0);
        }
    }
}

TEST_CASE("discrete family validates and samples its support") {
    DiscreteDistribution d05{{0.0, 1.0}, {0.5, 0.5}};
    DiscreteDistribution d02{{0.0, 0.5, 1.0}, {0.5, 0.4, 0.1}};
    // mean of d02 = 0.4*0.5 + 0.1 = 0.3
    Parameter p{"t", {0.5, 0.3}, {d05, d02}};
    const ParameterSet ps(2, RewardFamily::DiscreteBounded, {p});
    const Environment env(ps, 0);
    RngEngine rng(8);
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double r = env.sample_reward(1, rng);
        CHECK((r == 0.0 || r == 0.5 || r == 1.0));
        sum += r;
    }
    CHECK(std::abs(sum / n - 0.3) < 0.005);

    Parameter bad = p;
    bad.means = {0.5, 0.4}; // disagrees with the distribution mean
    CHECK_THROWS_AS(ParameterSet(2, RewardFamily::DiscreteBounded, {bad}),
                    std::invalid_argument);
    Parameter unnorm = p;
    unnorm.distributions[0].probs = {0.5, 0.6};
    CHECK_THROWS_AS(ParameterSet(2, RewardFamily::DiscreteBounded, {unnorm}),
                    std::invalid_argument);
}

TEST_CASE("environment validates the true parameter") {
    CHECK_THROWS_AS(Environment(two_arm_set(), 2), std::invalid_argument);
}

} // TEST_SUITE
