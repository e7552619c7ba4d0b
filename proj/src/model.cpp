#include "fpbandit/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_set>

namespace fpbandit {

namespace {

constexpr double kDistributionTol = 1e-12;

void check_mean_vector(std::span<const double> means, std::size_t arm_count,
                       const std::string& name) {
    if (means.size() != arm_count)
        throw std::invalid_argument("parameter '" + name + "' has " +
                                    std::to_string(means.size()) +
                                    " means, expected " +
                                    std::to_string(arm_count));
    for (double m : means)
        if (!(m >= 0.0 && m <= 1.0))
            throw std::invalid_argument("parameter '" + name +
                                        "' has a mean outside [0,1]");
}

} // namespace

double DiscreteDistribution::mean() const {
    double m = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) m += support[i] * probs[i];
    return m;
}

ParameterSet::ParameterSet(std::size_t arm_count, RewardFamily family,
                           std::vector<Parameter> parameters,
                           double tie_epsilon)
    : arm_count_(arm_count), family_(family),
      parameters_(std::move(parameters)), tie_epsilon_(tie_epsilon) {
    if (arm_count_ < 2)
        throw std::invalid_argument("arm count must be at least 2");
    if (parameters_.empty())
        throw std::invalid_argument("parameter set must be nonempty");
    if (tie_epsilon_ < 0.0)
        throw std::invalid_argument("tie_epsilon must be nonnegative");

    std::unordered_set<std::string> names;
    for (const Parameter& p : parameters_) {
        check_mean_vector(p.means, arm_count_, p.name);
        if (!names.insert(p.name).second)
            throw std::invalid_argument("duplicate parameter name '" + p.name +
                                        "'");
        if (family_ == RewardFamily::DiscreteBounded) {
            if (p.distributions.size() != arm_count_)
                throw std::invalid_argument(
                    "parameter '" + p.name +
                    "' must carry one distribution per arm");
            for (std::size_t arm = 0; arm < arm_count_; ++arm) {
                const DiscreteDistribution& d = p.distributions[arm];
                if (d.support.empty() || d.support.size() != d.probs.size())
                    throw std::invalid_argument(
                        "parameter '" + p.name +
                        "' has a malformed discrete distribution");
                double total = 0.0;
                for (std::size_t i = 0; i < d.support.size(); ++i) {
                    if (!(d.support[i] >= 0.0 && d.support[i] <= 1.0))
                        throw std::invalid_argument(
                            "discrete support must lie in [0,1]");
                    if (!(d.probs[i] >= 0.0))
                        throw std::invalid_argument(
                            "discrete probabilities must be nonnegative");
                    total += d.probs[i];
                }
                if (std::abs(total - 1.0) > kDistributionTol)
                    throw std::invalid_argument(
                        "discrete probabilities must sum to 1");
                if (std::abs(d.mean() - p.means[arm]) > kDistributionTol)
                    throw std::invalid_argument(
                        "discrete distribution mean disagrees with declared "
                        "mean for parameter '" +
                        p.name + "'");
            }
        } else if (!p.distributions.empty()) {
            throw std::invalid_argument(
                "Bernoulli parameters must not carry explicit distributions");
        }
    }
}

std::optional<std::size_t> ParameterSet::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < parameters_.size(); ++i)
        if (parameters_[i].name == name) return i;
    return std::nullopt;
}

std::optional<std::size_t>
ParameterSet::find_by_means(std::span<const double> means, double tol) const {
    if (means.size() != arm_count_) return std::nullopt;
    for (std::size_t i = 0; i < parameters_.size(); ++i) {
        bool match = true;
        for (std::size_t a = 0; a < arm_count_; ++a)
            if (std::abs(parameters_[i].means[a] - means[a]) > tol) {
                match = false;
                break;
            }
        if (match) return i;
    }
    return std::nullopt;
}

ParameterSet make_explicit_set(std::size_t arm_count,
                               std::vector<Parameter> parameters,
                               RewardFamily family, double tie_epsilon) {
    return ParameterSet(arm_count, family, std::move(parameters), tie_epsilon);
}

ParameterSet make_permutation_set(std::span<const double> base,
                                  double tie_epsilon) {
    if (base.empty()) throw std::invalid_argument("empty base vector");
    std::vector<double> v(base.begin(), base.end());
    std::sort(v.begin(), v.end());
    std::vector<Parameter> params;
    std::size_t idx = 0;
    do {
        char name[16];
        std::snprintf(name, sizeof(name), "perm_%03zu", idx++);
        params.push_back({name, v, {}});
    } while (std::next_permutation(v.begin(), v.end()));
    return ParameterSet(base.size(), RewardFamily::Bernoulli,
                        std::move(params), tie_epsilon);
}

ParameterSet make_product_set(std::span<const double> values,
                              std::size_t arm_count, double tie_epsilon) {
    if (values.empty()) throw std::invalid_argument("empty value set");
    if (arm_count == 0) throw std::invalid_argument("arm count must be positive");
    std::vector<Parameter> params;
    std::vector<std::size_t> odo(arm_count, 0);
    std::size_t idx = 0;
    for (;;) {
        std::vector<double> means(arm_count);
        for (std::size_t a = 0; a < arm_count; ++a) means[a] = values[odo[a]];
        char name[16];
        std::snprintf(name, sizeof(name), "prod_%04zu", idx++);
        params.push_back({name, std::move(means), {}});
        // odometer: last arm varies fastest
        std::size_t pos = arm_count;
        while (pos > 0) {
            if (++odo[pos - 1] < values.size()) break;
            odo[pos - 1] = 0;
            --pos;
        }
        if (pos == 0) break;
    }
    return ParameterSet(arm_count, RewardFamily::Bernoulli, std::move(params),
                        tie_epsilon);
}

Environment::Environment(ParameterSet params, std::size_t true_parameter,
                         std::uint64_t rng_seed)
    : params_(std::move(params)), true_parameter_(true_parameter),
      rng_seed_(rng_seed) {
    if (true_parameter_ >= params_.size())
        throw std::invalid_argument("true_parameter index out of range");
}

double Environment::sample_reward(std::size_t arm, RngEngine& rng) const {
    if (arm >= params_.arm_count())
        throw std::out_of_range("arm index out of range");
    if (params_.family() == RewardFamily::Bernoulli)
        return rng.bernoulli(true_mean(arm)) ? 1.0 : 0.0;
    // DiscreteBounded: CDF inversion over the finite support.
    const DiscreteDistribution& d =
        params_.parameter(true_parameter_).distributions[arm];
    const double u = rng.uniform01();
    double acc = 0.0;
    for (std::size_t i = 0; i < d.support.size(); ++i) {
        acc += d.probs[i];
        if (u < acc) return d.support[i];
    }
    return d.support.back();
}

} // namespace fpbandit
