#include <doctest.h>

#include <stdexcept>

#include "fpbandit/io.hpp"

using namespace fpbandit;

TEST_SUITE("io") {

TEST_CASE("explicit instance round trip") {
    const auto j = parse_json(R"({
      "arms": 2, "reward_family": "bernoulli",
      "parameters": {"type": "explicit", "list": [
        {"name": "theta1", "means": [0.9, 0.5]},
        {"name": "theta2", "means": [0.2, 0.5]}]},
      "true_parameter": "theta1", "tie_epsilon": 0.0
    })");
    const LoadedInstance inst = instance_from_json(j);
    CHECK(inst.params.arm_count() == 2);
    CHECK(inst.params.size() == 2);
    CHECK(inst.params.mean(0, 0) == 0.9);
    CHECK(inst.true_parameter == 0);
}

TEST_CASE("generator instances") {
    const auto perm = instance_from_json(parse_json(
        R"({"parameters": {"type": "permutations", "base": [0.6,0.4,0.3,0.2]}})"));
    CHECK(perm.params.size() == 24);
    CHECK(!perm.true_parameter.has_value());

    const auto prod = instance_from_json(parse_json(
        R"({"parameters": {"type": "product", "values": [0.6,0.4,0.3,0.2],
            "arms": 4}, "true_parameter": [0.4, 0.3, 0.2, 0.2]})"));
    CHECK(prod.params.size() == 256);
    REQUIRE(prod.true_parameter.has_value());
    CHECK(prod.params.parameter(*prod.true_parameter).means ==
          std::vector<double>{0.4, 0.3, 0.2, 0.2});
}

TEST_CASE("parse errors carry line and column") {
    try {
        parse_json("{\n  \"arms\": 2,\n  oops\n}");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
        CHECK(e.column >= 1);
    }
}

TEST_CASE("invalid instances are rejected") {
    CHECK_THROWS_AS(
        instance_from_json(parse_json(R"({"parameters": {"type": "explicit",
            "list": [{"name": "a", "means": [0.5, 1.5]}]}})")),
        std::invalid_argument);
    CHECK_THROWS_AS(
        instance_from_json(parse_json(R"({"arms": 3, "parameters":
            {"type": "permutations", "base": [0.5, 0.2]}})")),
        std::invalid_argument);
    CHECK_THROWS_AS(
        instance_from_json(parse_json(R"({"parameters": {"type": "mystery"}})")),
        std::invalid_argument);
    CHECK_THROWS_AS(
        instance_from_json(parse_json(R"({"parameters": {"type": "product",
            "values": [0.5]}})")),
        std::invalid_argument); // no arm count anywhere
}

TEST_CASE("true parameter resolution forms") {
    const auto inst = instance_from_json(parse_json(
        R"({"parameters": {"type": "permutations", "base": [0.6,0.4,0.3,0.2]}})"));
    CHECK(resolve_parameter(inst.params, nlohmann::json("perm_000")) == 0);
    CHECK(resolve_parameter(inst.params, nlohmann::json(5)) == 5);
    const auto by_means =
        resolve_parameter(inst.params, parse_json("[0.6, 0.4, 0.3, 0.2]"));
    CHECK(inst.params.parameter(by_means).means ==
          std::vector<double>{0.6, 0.4, 0.3, 0.2});
    CHECK_THROWS_AS(resolve_parameter(inst.params, nlohmann::json("nope")),
                    std::invalid_argument);
    CHECK_THROWS_AS(resolve_parameter(inst.params, parse_json("[0.1, 0.1]")),
                    std::invalid_argument);
}

TEST_CASE("discrete instance schema") {
    const auto j = parse_json(R"({
      "arms": 2, "reward_family": "discrete",
      "parameters": {"type": "explicit", "list": [
        {"name": "t", "distributions": [
           {"support": [0.0, 1.0], "probs": [0.5, 0.5]},
           {"support": [0.0, 0.5, 1.0], "probs": [0.5, 0.4, 0.1]}]}]},
      "true_parameter": "t"
    })");
    const LoadedInstance inst = instance_from_json(j);
    CHECK(inst.params.family() == RewardFamily::DiscreteBounded);
    CHECK(inst.params.mean(0, 0) == doctest::Approx(0.5));
    CHECK(inst.params.mean(0, 1) == doctest::Approx(0.3));
}

} // TEST_SUITE
