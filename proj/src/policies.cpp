#include "fpbandit/policies.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "fpbandit/analysis.hpp"

namespace fpbandit {

double empirical_mean(double reward_sum, std::uint64_t count) {
    assert(count > 0 && "empirical mean of an unpulled arm");
    return reward_sum / static_cast<double>(count);
}

std::vector<std::size_t> fpucb_episode_set(
    const ParameterSet& params, std::span<const std::size_t> candidates,
    std::span<const double> muhat, std::span<const std::uint64_t> counts,
    std::uint64_t episode) {
    const std::size_t n = params.size();
    const double lnk = std::log(static_cast<double>(episode));
    std::vector<double> radius(candidates.size());
    for (std::size_t j = 0; j < candidates.size(); ++j) {
        if (counts[j] == 0)
            throw std::invalid_argument("candidate arm with zero pulls");
        radius[j] = std::sqrt(3.0 * lnk / static_cast<double>(counts[j]));
    }
    std::vector<double> means(candidates.size() * n);
    for (std::size_t j = 0; j < candidates.size(); ++j)
        for (std::size_t th = 0; th < n; ++th)
            means[j * n + th] = params.mean(th, candidates[j]);

    std::vector<std::uint8_t> mask(n);
    kernels::consistent_mask_scalar(means.data(), candidates.size(), n,
                                    muhat.data(), radius.data(), mask.data());
    std::vector<std::size_t> arms;
    for (std::size_t th = 0; th < n; ++th)
        if (mask[th]) arms.push_back(best_arm(params, th));
    std::sort(arms.begin(), arms.end());
    arms.erase(std::unique(arms.begin(), arms.end()), arms.end());
    return arms;
}

FpUcbPolicy::FpUcbPolicy(const ParameterSet& params)
    : n_params_(params.size()), counts_(params.arm_count(), 0),
      sums_(params.arm_count(), 0.0), mask_(params.size()),
      arm_present_(params.arm_count()),
      kernel_(kernels::select_consistency_kernel()) {
    best_arm_.resize(n_params_);
    for (std::size_t th = 0; th < n_params_; ++th)
        best_arm_[th] = best_arm(params, th);
    cand_ = best_arm_;
    std::sort(cand_.begin(), cand_.end());
    cand_.erase(std::unique(cand_.begin(), cand_.end()), cand_.end());

    cand_means_.resize(cand_.size() * n_params_);
    for (std::size_t j = 0; j < cand_.size(); ++j)
        for (std::size_t th = 0; th < n_params_; ++th)
            cand_means_[j * n_params_ + th] = params.mean(th, cand_[j]);
    muhat_.resize(cand_.size());
    radius_.resize(cand_.size());
}

void FpUcbPolicy::start_episode() {
    const std::uint64_t k = episode_ + 1;
    const double lnk = std::log(static_cast<double>(k));
    for (std::size_t j = 0; j < cand_.size(); ++j) {
        const std::uint64_t n = counts_[cand_[j]];
        muhat_[j] = empirical_mean(sums_[cand_[j]], n);
        radius_[j] = std::sqrt(3.0 * lnk / static_cast<double>(n));
    }
    kernel_(cand_means_.data(), cand_.size(), n_params_, muhat_.data(),
            radius_.data(), mask_.data());

    std::fill(arm_present_.begin(), arm_present_.end(), 0);
    bool any = false;
    for (std::size_t th = 0; th < n_params_; ++th)
        if (mask_[th]) {
            arm_present_[best_arm_[th]] = 1;
            any = true;
        }

    pending_.clear();
    if (any) {
        for (std::size_t a : cand_)
            if (arm_present_[a]) pending_.push_back(a);
    } else {
        pending_ = cand_;
    }
    pos_ = 0;
    episode_ = k;
    if (episodes_.size() < kEpisodeLogCap)
        episodes_.push_back(
            {k, t_, static_cast<std::uint32_t>(pending_.size()), !any});
}

std::size_t FpUcbPolicy::select() {
    if (t_ < cand_.size()) return cand_[t_];
    if (pos_ == pending_.size()) start_episode();
    return pending_[pos_++];
}

void FpUcbPolicy::update(std::size_t arm, double reward) {
    counts_[arm] += 1;
    sums_[arm] += reward;
    t_ += 1;
}

Ucb1Policy::Ucb1Policy(std::size_t arm_count)
    : counts_(arm_count, 0), sums_(arm_count, 0.0) {}

double ucb1_index(double mean, std::uint64_t count, std::uint64_t t) {
    return mean + std::sqrt(2.0 * std::log(static_cast<double>(t)) /
                            static_cast<double>(count));
}

std::size_t Ucb1Policy::select() {
    const std::size_t L = counts_.size();
    if (t_ < L) return t_;
    std::size_t best = 0;
    double best_index = -1.0;
    for (std::size_t i = 0; i < L; ++i) {
        const double idx = ucb1_index(empirical_mean(sums_[i], counts_[i]),
                                      counts_[i], t_ + 1);
        if (idx > best_index) {
            best_index = idx;
            best = i;
        }
    }
    return best;
}

void Ucb1Policy::update(std::size_t arm, double reward) {
    counts_[arm] += 1;
    sums_[arm] += reward;
    t_ += 1;
}

ThompsonPolicy::ThompsonPolicy(std::size_t arm_count, RngEngine rng)
    : a_(arm_count, 1.0), b_(arm_count, 1.0), rng_(rng) {}

std::size_t ThompsonPolicy::select() {
    std::size_t best = 0;
    double best_sample = -1.0;
    for (std::size_t i = 0; i < a_.size(); ++i) {
        const double psi = rng_.beta(a_[i], b_[i]);
        if (psi > best_sample) {
            best_sample = psi;
            best = i;
        }
    }
    return best;
}

void ThompsonPolicy::update(std::size_t arm, double reward) {
    double r = reward;
    if (r != 0.0 && r != 1.0) r = rng_.bernoulli(r) ? 1.0 : 0.0;
    a_[arm] += r;
    b_[arm] += 1.0 - r;
}

int policy_id(std::string_view name) {
    for (int i = 0; i < static_cast<int>(std::size(kPolicyNames)); ++i)
        if (kPolicyNames[i] == name) return i;
    return -1;
}

std::unique_ptr<Policy> make_policy(std::string_view name,
                                    const ParameterSet& params,
                                    RngEngine policy_rng) {
    if (name == "fp-ucb") return std::make_unique<FpUcbPolicy>(params);
    if (name == "ucb1") return std::make_unique<Ucb1Policy>(params.arm_count());
    if (name == "thompson")
        return std::make_unique<ThompsonPolicy>(params.arm_count(), policy_rng);
    throw std::invalid_argument("unknown policy '" + std::string(name) + "'");
}

} // namespace fpbandit
