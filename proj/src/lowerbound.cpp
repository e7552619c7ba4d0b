#include "fpbandit/lowerbound.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace fpbandit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double kl_term(double p, double q) {
    if (p == 0.0) return 0.0;
    if (q == 0.0) return kInf;
    return p * std::log(p / q);
}

// h . row, skipping zero-weight entries so 0 * inf never produces NaN.
double weighted_sum(const std::vector<double>& h,
                    const std::vector<double>& row) {
    double s = 0.0;
    for (std::size_t u = 0; u < h.size(); ++u)
        if (h[u] > 0.0) s += h[u] * row[u];
    return s;
}

unsigned default_subdivisions(std::size_t dims) {
    switch (dims) {
    case 1:
    case 2: return 10000;
    case 3: return 1000;
    case 4: return 100;
    default: return 60;
    }
}

// Enumerates integer compositions of `total` into counts.size() parts,
// lexicographically; fn returns true to stop early.
bool for_each_composition(std::size_t pos, unsigned remaining,
                          std::vector<unsigned>& counts,
                          const std::function<bool(void)>& fn) {
    if (pos + 1 == counts.size()) {
        counts[pos] = remaining;
        return fn();
    }
    for (unsigned c = 0; c <= remaining; ++c) {
        counts[pos] = c;
        if (for_each_composition(pos + 1, remaining - c, counts, fn))
            return true;
    }
    return false;
}

} // namespace

double bernoulli_kl(double p, double q) {
    if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0))
        throw std::invalid_argument("Bernoulli means must lie in [0,1]");
    return kl_term(p, q) + kl_term(1.0 - p, 1.0 - q);
}

double discrete_kl(const DiscreteDistribution& P,
                   const DiscreteDistribution& Q) {
    double sum = 0.0;
    for (std::size_t i = 0; i < P.support.size(); ++i) {
        if (P.probs[i] == 0.0) continue;
        double q = 0.0;
        bool found = false;
        for (std::size_t j = 0; j < Q.support.size(); ++j)
            if (Q.support[j] == P.support[i]) {
                q = Q.probs[j];
                found = true;
                break;
            }
        if (!found || q == 0.0) return kInf;
        sum += P.probs[i] * std::log(P.probs[i] / q);
    }
    return sum;
}

double worst_case_ratio(const std::vector<double>& allocation,
                        const std::vector<double>& gaps,
                        const std::vector<std::vector<double>>& kl_by_theta) {
    const double num = weighted_sum(allocation, gaps);
    double worst = 0.0;
    for (const std::vector<double>& row : kl_by_theta) {
        const double den = weighted_sum(allocation, row);
        double ratio;
        if (den > 0.0)
            ratio = num / den; // num finite, den may be +inf -> ratio 0
        else
            ratio = num > 0.0 ? kInf : 0.0;
        worst = std::max(worst, ratio);
    }
    return worst;
}

bool simplex_feasible(const std::vector<double>& gaps,
                      const std::vector<std::vector<double>>& kl_by_theta,
                      double t, unsigned subdivisions,
                      std::vector<double>* witness) {
    const std::size_t dims = gaps.size();
    if (dims == 0) return false;
    std::vector<unsigned> counts(dims);
    std::vector<double> h(dims);
    bool feasible = false;
    for_each_composition(0, subdivisions, counts, [&] {
        for (std::size_t u = 0; u < dims; ++u)
            h[u] = static_cast<double>(counts[u]) /
                   static_cast<double>(subdivisions);
        for (const std::vector<double>& row : kl_by_theta) {
            double margin = 0.0;
            for (std::size_t u = 0; u < dims; ++u) {
                if (h[u] == 0.0) continue;
                if (row[u] == kInf) { margin = -kInf; break; }
                margin += h[u] * (gaps[u] - t * row[u]);
            }
            if (margin > 0.0) return false; // this h fails; keep scanning
        }
        feasible = true;
        if (witness) *witness = h;
        return true; // stop enumeration
    });
    return feasible;
}

MinMaxSolution simplex_min_max_ratio(
    const std::vector<double>& gaps,
    const std::vector<std::vector<double>>& kl_by_theta, double resolution,
    unsigned subdivisions) {
    const std::size_t dims = gaps.size();
    if (dims == 0) throw std::invalid_argument("empty exploration set");
    if (!(resolution > 0.0))
        throw std::invalid_argument("resolution must be positive");
    if (subdivisions == 0) subdivisions = default_subdivisions(dims);

    std::vector<double> h;
    if (simplex_feasible(gaps, kl_by_theta, 0.0, subdivisions, &h))
        return {worst_case_ratio(h, gaps, kl_by_theta), h};

    // Initial upper end: worst confusion row's cheapest single-arm ratio,
    // plus one; expanded geometrically if that is still infeasible.
    double hi = 0.0;
    for (const std::vector<double>& row : kl_by_theta) {
        double cheapest = kInf;
        for (std::size_t u = 0; u < dims; ++u)
            if (row[u] > 0.0) cheapest = std::min(cheapest, gaps[u] / row[u]);
        hi = std::max(hi, cheapest);
    }
    hi += 1.0;
    int guard = 0;
    while (!simplex_feasible(gaps, kl_by_theta, hi, subdivisions, &h)) {
        hi *= 2.0;
        if (++guard > 200)
            throw std::runtime_error("lower-bound bracket expansion failed");
    }

    double lo = 0.0;
    while (hi - lo > resolution) {
        const double mid = 0.5 * (lo + hi);
        if (simplex_feasible(gaps, kl_by_theta, mid, subdivisions, &h))
            hi = mid;
        else
            lo = mid;
    }
    // Re-derive the witness at the final upper end (h currently matches the
    // last feasible probe, which is the final hi already; keep both paths
    // safe if the loop never ran).
    if (h.empty()) simplex_feasible(gaps, kl_by_theta, hi, subdivisions, &h);
    return {worst_case_ratio(h, gaps, kl_by_theta), h};
}

LowerBoundResult lower_bound(const ParameterSet& params,
                             const StructuralReport& report,
                             double resolution) {
    LowerBoundResult res;
    res.resolution = resolution;
    res.confusion_parameters = report.confusion_parameters;
    for (std::size_t a : report.candidate_arms)
        if (a != report.true_best_arm) res.exploration_arms.push_back(a);

    const std::size_t nu = res.exploration_arms.size();
    const std::size_t nb = res.confusion_parameters.size();
    if (nb == 0) return res; // bounded regime: value 0

    res.kl_table.assign(nu, std::vector<double>(nb, 0.0));
    for (std::size_t ui = 0; ui < nu; ++ui) {
        const std::size_t u = res.exploration_arms[ui];
        for (std::size_t bi = 0; bi < nb; ++bi) {
            const std::size_t th = res.confusion_parameters[bi];
            if (params.family() == RewardFamily::Bernoulli)
                res.kl_table[ui][bi] =
                    bernoulli_kl(params.mean(report.true_parameter, u),
                                 params.mean(th, u));
            else
                res.kl_table[ui][bi] = discrete_kl(
                    params.parameter(report.true_parameter).distributions[u],
                    params.parameter(th).distributions[u]);
        }
    }

    if (nu == 0) {
        res.vacuous = true; // nothing to explore yet B is nonempty
        return res;
    }

    for (std::size_t bi = 0; bi < nb; ++bi) {
        bool informative = false;
        for (std::size_t ui = 0; ui < nu; ++ui)
            if (res.kl_table[ui][bi] > 0.0) { informative = true; break; }
        if (!informative) {
            res.degenerate = true;
            res.value = kInf;
            return res;
        }
    }

    std::vector<double> gaps(nu);
    for (std::size_t ui = 0; ui < nu; ++ui)
        gaps[ui] = report.gap_of(res.exploration_arms[ui]);
    std::vector<std::vector<double>> by_theta(nb, std::vector<double>(nu));
    for (std::size_t bi = 0; bi < nb; ++bi)
        for (std::size_t ui = 0; ui < nu; ++ui)
            by_theta[bi][ui] = res.kl_table[ui][bi];

    const MinMaxSolution sol =
        simplex_min_max_ratio(gaps, by_theta, resolution);
    res.value = sol.value;
    res.allocation = sol.allocation;
    return res;
}

} // namespace fpbandit
