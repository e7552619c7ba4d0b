#include "fpbandit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fpbandit {

namespace {

bool contains(const std::vector<std::size_t>& v, std::size_t x) {
    return std::binary_search(v.begin(), v.end(), x);
}

} // namespace

bool StructuralReport::in_candidate_set(std::size_t arm) const {
    return contains(candidate_arms, arm);
}

bool StructuralReport::in_confusion_arms(std::size_t arm) const {
    return contains(confusion_arms, arm);
}

double StructuralReport::gap_of(std::size_t arm) const {
    auto it = std::lower_bound(candidate_arms.begin(), candidate_arms.end(), arm);
    if (it == candidate_arms.end() || *it != arm)
        throw std::invalid_argument("arm is not a candidate");
    return gaps[static_cast<std::size_t>(it - candidate_arms.begin())];
}

std::size_t best_arm(const ParameterSet& params, std::size_t theta) {
    if (theta >= params.size())
        throw std::invalid_argument("parameter index out of range");
    const std::size_t L = params.arm_count();
    double best = -1.0;
    for (std::size_t a = 0; a < L; ++a) best = std::max(best, params.mean(theta, a));
    for (std::size_t a = 0; a < L; ++a)
        if (params.mean(theta, a) >= best - params.tie_epsilon()) return a;
    return 0; // unreachable
}

StructuralReport analyze(const ParameterSet& params, std::size_t true_param) {
    if (true_param >= params.size())
        throw std::invalid_argument("parameter index out of range");
    const std::size_t n = params.size();
    const double eps = params.tie_epsilon();

    StructuralReport r;
    r.true_parameter = true_param;
    r.best_arm_per_parameter.resize(n);
    for (std::size_t th = 0; th < n; ++th) {
        const std::size_t a = best_arm(params, th);
        r.best_arm_per_parameter[th] = a;
        const double top = params.mean(th, a);
        std::size_t maximizers = 0;
        for (std::size_t j = 0; j < params.arm_count(); ++j)
            if (params.mean(th, j) >= top - eps) ++maximizers;
        if (maximizers > 1) r.non_unique_best.push_back(th);
    }
    r.true_best_arm = r.best_arm_per_parameter[true_param];

    r.candidate_arms = r.best_arm_per_parameter;
    std::sort(r.candidate_arms.begin(), r.candidate_arms.end());
    r.candidate_arms.erase(
        std::unique(r.candidate_arms.begin(), r.candidate_arms.end()),
        r.candidate_arms.end());

    const double mu_star = params.mean(true_param, r.true_best_arm);
    r.alpha1.resize(n);
    for (std::size_t th = 0; th < n; ++th) {
        r.alpha1[th] = std::abs(mu_star - params.mean(th, r.true_best_arm));
        const bool different_best =
            r.best_arm_per_parameter[th] != r.true_best_arm;
        if (different_best && r.alpha1[th] <= eps)
            r.confusion_parameters.push_back(th);
    }

    for (std::size_t th : r.confusion_parameters)
        r.confusion_arms.push_back(r.best_arm_per_parameter[th]);
    std::sort(r.confusion_arms.begin(), r.confusion_arms.end());
    r.confusion_arms.erase(
        std::unique(r.confusion_arms.begin(), r.confusion_arms.end()),
        r.confusion_arms.end());

    r.gaps.resize(r.candidate_arms.size());
    for (std::size_t j = 0; j < r.candidate_arms.size(); ++j)
        r.gaps[j] = mu_star - params.mean(true_param, r.candidate_arms[j]);

    r.separations.assign(r.confusion_arms.size(),
                         std::numeric_limits<double>::infinity());
    for (std::size_t th : r.confusion_parameters) {
        const std::size_t arm = r.best_arm_per_parameter[th];
        const auto it = std::lower_bound(r.confusion_arms.begin(),
                                         r.confusion_arms.end(), arm);
        const std::size_t slot =
            static_cast<std::size_t>(it - r.confusion_arms.begin());
        const double sep =
            std::abs(params.mean(true_param, arm) - params.mean(th, arm));
        r.separations[slot] = std::min(r.separations[slot], sep);
    }

    r.regime = r.confusion_parameters.empty() ? Regime::BoundedRegret
                                              : Regime::LogarithmicRegret;
    return r;
}

std::uint64_t k_threshold(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    const double c = 12.0 / (alpha * alpha);
    for (std::uint64_t k = 3;; ++k) {
        const double bound = std::ceil(c * std::log(static_cast<double>(k)));
        if (static_cast<double>(k) > bound) return k;
    }
}

std::uint64_t tail_episode_bound(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    const double v = std::ceil(144.0 / (alpha * alpha * alpha * alpha));
    return std::max<std::uint64_t>(3, static_cast<std::uint64_t>(v));
}

ConstantsReport constants(const StructuralReport& report,
                          const ParameterSet& params) {
    ConstantsReport c;
    c.regime = report.regime;
    const double A = static_cast<double>(report.candidate_arms.size());

    // Eligible pairs: theta outside B with a*(theta) a suboptimal candidate.
    for (std::size_t th = 0; th < params.size(); ++th) {
        const std::size_t arm = report.best_arm_per_parameter[th];
        if (arm == report.true_best_arm) continue;
        if (contains(report.confusion_parameters, th)) continue;
        PairConstants pc;
        pc.arm = arm;
        pc.param = th;
        pc.alpha = report.alpha1[th];
        pc.k_thresh = k_threshold(pc.alpha);
        pc.E = tail_episode_bound(pc.alpha);
        c.pairs.push_back(pc);
    }

    for (std::size_t arm : report.candidate_arms) {
        if (arm == report.true_best_arm) continue;
        if (report.in_confusion_arms(arm)) continue;
        double best = std::numeric_limits<double>::infinity();
        for (const PairConstants& pc : c.pairs) {
            if (pc.arm != arm) continue;
            const double E = static_cast<double>(pc.E);
            const double tail = 2.0 * E * (E + 1.0) * A +
                                4.0 * A * std::pow(pc.alpha, 10.0);
            best = std::min(best, tail);
        }
        c.c_arms.push_back(arm);
        c.c_values.push_back(1.0 + 4.0 * A + best);
    }

    for (std::size_t j = 0; j < report.candidate_arms.size(); ++j) {
        const std::size_t arm = report.candidate_arms[j];
        double ci = 0.0;
        for (std::size_t s = 0; s < c.c_arms.size(); ++s)
            if (c.c_arms[s] == arm) ci = c.c_values[s];
        c.D1 = std::max(c.D1, report.gaps[j] * ci);
        c.D2 = std::max(c.D2, report.gaps[j] * (2.0 + ci + 4.0 * A));
    }
    c.D1 *= A;
    c.D2 *= A;

    for (std::size_t s = 0; s < report.confusion_arms.size(); ++s) {
        const double gap = report.gap_of(report.confusion_arms[s]);
        const double sep = report.separations[s];
        c.log_coefficient += gap / (sep * sep);
    }
    c.log_coefficient *= 12.0;
    return c;
}

double regret_upper_bound(const ConstantsReport& c, double T) {
    if (!(T >= 1.0)) throw std::invalid_argument("horizon must be >= 1");
    if (c.regime == Regime::BoundedRegret) return c.D1;
    return c.D2 + c.log_coefficient * std::log(T);
}

double episode_tail_sum(double alpha, std::size_t candidate_count,
                        std::uint64_t k_max) {
    const std::uint64_t k0 = k_threshold(alpha);
    const double c = 12.0 / (alpha * alpha);
    double sum = 0.0;
    for (std::uint64_t k = k0; k <= k_max; ++k) {
        const double kd = static_cast<double>(k);
        const double denom = kd - std::ceil(c * std::log(kd));
        sum += 2.0 * static_cast<double>(candidate_count) * kd /
               std::pow(denom, 5.0);
    }
    return sum;
}

} // namespace fpbandit
