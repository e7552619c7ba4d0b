#pragma once

#include <vector>

#include "fpbandit/model.hpp"
#include "fpbandit/rng.hpp"

namespace fpbandit::testing {

/// The two-parameter instance used throughout:
///   theta1 = [0.9, 0.5], theta2 = [0.2, 0.5].
inline ParameterSet two_arm_set() {
    return make_explicit_set(2, {{"theta1", {0.9, 0.5}, {}},
                                 {"theta2", {0.2, 0.5}, {}}});
}

inline ParameterSet perm24_set() {
    const std::vector<double> base{0.6, 0.4, 0.3, 0.2};
    return make_permutation_set(base);
}

inline ParameterSet product256_set() {
    const std::vector<double> values{0.6, 0.4, 0.3, 0.2};
    return make_product_set(values, 4);
}

/// Random instance with means on the 0.05 grid and a unique best arm per
/// parameter (the setting of the regret analysis). Arms in [2, max_arms],
/// parameters in [1, max_params].
inline ParameterSet random_grid_set(RngEngine& rng, std::size_t max_arms = 5,
                                    std::size_t max_params = 30) {
    const std::size_t arms = 2 + rng.next_u64() % (max_arms - 1);
    const std::size_t count = 1 + rng.next_u64() % max_params;
    std::vector<Parameter> params;
    for (std::size_t p = 0; p < count; ++p) {
        std::vector<double> means(arms);
        for (;;) {
            for (double& m : means)
                m = 0.05 * static_cast<double>(rng.next_u64() % 21);
            double top = 0.0;
            for (double m : means) top = std::max(top, m);
            std::size_t maximizers = 0;
            for (double m : means)
                if (m == top) ++maximizers;
            if (maximizers == 1) break;
        }
        params.push_back({"r_" + std::to_string(p), std::move(means), {}});
    }
    return make_explicit_set(arms, std::move(params));
}

} // namespace fpbandit::testing
