#pragma once

#include <vector>

#include "fpbandit/analysis.hpp"
#include "fpbandit/model.hpp"

namespace fpbandit {

/// KL(Bern(p) || Bern(q)) with the 0*ln(0) = 0 convention; +infinity when p
/// puts mass where q puts none.
double bernoulli_kl(double p, double q);

/// KL between finite discrete distributions; support points are matched by
/// value, mass of P outside Q's support yields +infinity.
double discrete_kl(const DiscreteDistribution& P, const DiscreteDistribution& Q);

/// Asymptotic lower-bound constant and the optimizing exploration allocation.
struct LowerBoundResult {
    double value = 0.0;
    bool degenerate = false; // some confusion parameter indistinguishable
    bool vacuous = false;    // no suboptimal candidate arm to explore
    double resolution = 0.0;

    std::vector<std::size_t> exploration_arms;     // A \ {a*}, ascending
    std::vector<double> allocation;                // h, aligned with arms
    std::vector<std::size_t> confusion_parameters; // B
    std::vector<std::vector<double>> kl_table;     // [arm][confusion param]
};

/// Worst case over confusion rows of  (h . gaps) / (h . kl_row), with
/// 0-denominator rows counting as +infinity (or 0 when the numerator is 0).
double worst_case_ratio(const std::vector<double>& allocation,
                        const std::vector<double>& gaps,
                        const std::vector<std::vector<double>>& kl_by_theta);

/// True iff some allocation h on the enumeration grid (subdivisions per
/// dimension) satisfies, for every row, h.gaps - t * h.kl_row <= 0. On
/// success, the witnessing h is written to *witness when non-null.
bool simplex_feasible(const std::vector<double>& gaps,
                      const std::vector<std::vector<double>>& kl_by_theta,
                      double t, unsigned subdivisions,
                      std::vector<double>* witness = nullptr);

struct MinMaxSolution {
    double value = 0.0;
    std::vector<double> allocation;
};

/// min over the simplex (restricted to the enumeration grid) of the worst
/// case ratio, located by bisection on the value with the feasibility test
/// above. The returned value is the ratio achieved by the returned
/// allocation. `subdivisions` = 0 picks a grid suited to the dimension.
MinMaxSolution simplex_min_max_ratio(
    const std::vector<double>& gaps,
    const std::vector<std::vector<double>>& kl_by_theta, double resolution,
    unsigned subdivisions = 0);

/// Evaluates the instance's asymptotic regret lower-bound constant: the min
/// over exploration allocations of the max over confusion parameters of the
/// gap-to-information ratio. Value 0 when B is empty (or vacuous), +infinity
/// with the degenerate flag when some confusion parameter has zero KL on
/// every exploration arm.
LowerBoundResult lower_bound(const ParameterSet& params,
                             const StructuralReport& report,
                             double resolution = 1e-4);

} // namespace fpbandit
