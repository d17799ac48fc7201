#include "bestarm/env.hpp"

#include <cmath>
#include <numeric>

#include "bestarm/normal.hpp"

namespace bestarm {

std::string family_name(RewardFamily family) {
    switch (family) {
        case RewardFamily::bernoulli: return "bernoulli";
        case RewardFamily::gaussian: return "gaussian";
        case RewardFamily::deterministic: return "deterministic";
    }
    throw std::logic_error("unknown family");
}

RewardFamily family_from_name(const std::string& name) {
    if (name == "bernoulli") return RewardFamily::bernoulli;
    if (name == "gaussian") return RewardFamily::gaussian;
    if (name == "deterministic") return RewardFamily::deterministic;
    throw std::invalid_argument("unknown reward family: " + name);
}

BanditInstance::BanditInstance(std::vector<double> means_by_rank, RewardFamily family,
                               double sigma)
    : means_(std::move(means_by_rank)), family_(family), sigma_(sigma) {
    if (means_.empty()) throw std::invalid_argument("instance needs at least one arm");
    for (double m : means_) {
        if (!(m >= 0.0 && m <= 1.0)) throw std::invalid_argument("means must lie in [0,1]");
    }
    for (std::size_t i = 1; i < means_.size(); ++i) {
        if (means_[i] > means_[i - 1])
            throw std::invalid_argument("means must be non-increasing in rank order");
    }
    if (means_.size() >= 2 && means_[1] == means_[0])
        throw std::invalid_argument("best arm mean must be strictly largest");
    if (family_ == RewardFamily::gaussian && !(sigma_ > 0.0))
        throw std::invalid_argument("gaussian sigma must be positive");

    rank_of_.resize(means_.size());
    external_of_.resize(means_.size());
    std::iota(rank_of_.begin(), rank_of_.end(), 0);
    std::iota(external_of_.begin(), external_of_.end(), 0);
}

BanditInstance BanditInstance::shuffled(std::uint64_t seed) const {
    BanditInstance out = *this;
    const int n = n_arms();
    // Fisher-Yates over "external slot of rank r".
    std::vector<int> ext(n);
    std::iota(ext.begin(), ext.end(), 0);
    SplitMix64 rng(mix64(seed + kGolden));
    for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
        std::swap(ext[i], ext[j]);
    }
    for (int rank = 0; rank < n; ++rank) {
        out.external_of_[rank] = ext[rank];
        out.rank_of_[ext[rank]] = rank;
    }
    return out;
}

BanditInstance make_alpha_instance(int n, double alpha, double mu0, double gap_scale,
                                   RewardFamily family, double sigma) {
    if (n < 1) throw std::invalid_argument("alpha instance needs n >= 1");
    if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
    if (!(mu0 > 0.0 && mu0 <= 1.0)) throw std::invalid_argument("mu0 must lie in (0,1]");
    if (!(gap_scale > 0.0 && gap_scale <= mu0))
        throw std::invalid_argument("gap_scale must lie in (0, mu0]");

    std::vector<double> means(static_cast<std::size_t>(n) + 1);
    means[0] = mu0;
    for (int i = 1; i <= n; ++i) {
        means[i] = mu0 - gap_scale * std::pow(static_cast<double>(i) / n, alpha);
    }
    return BanditInstance(std::move(means), family, sigma);
}

EnvironmentHandle::EnvironmentHandle(BanditInstance instance, std::uint64_t master_seed,
                                     std::uint64_t trial_id)
    : instance_(std::move(instance)), master_seed_(master_seed), trial_id_(trial_id) {
    const int n = instance_.n_arms();
    const std::uint64_t tkey = trial_key(master_seed_, trial_id_);
    arm_keys_.resize(n);
    mean_by_external_.resize(n);
    for (int a = 0; a < n; ++a) {
        arm_keys_[a] = arm_key(tkey, static_cast<std::uint32_t>(a));
        mean_by_external_[a] = instance_.mean_of_external(a);
    }
    ledger_.per_arm.assign(n, 0);
}

void EnvironmentHandle::check_arm(int arm) const {
    if (arm < 0 || arm >= instance_.n_arms())
        throw std::invalid_argument("arm index out of range: " + std::to_string(arm));
}

double EnvironmentHandle::pull(int arm) {
    return pull_mean(arm, 1);
}

double EnvironmentHandle::pull_mean(int arm, std::int64_t count) {
    check_arm(arm);
    if (count < 1) throw std::invalid_argument("pull count must be >= 1");

    const std::uint64_t key = arm_keys_[arm];
    const std::int64_t k0 = ledger_.per_arm[arm];
    const double mu = mean_by_external_[arm];
    double sum = 0.0;

    switch (instance_.family()) {
        case RewardFamily::bernoulli:
            for (std::int64_t i = 0; i < count; ++i) {
                const std::uint64_t w = pull_word(key, static_cast<std::uint64_t>(k0 + i));
                sum += to_unit01(w) < mu ? 1.0 : 0.0;
            }
            break;
        case RewardFamily::gaussian: {
            const double sigma = instance_.sigma();
            for (std::int64_t i = 0; i < count; ++i) {
                PullStream ws(pull_word(key, static_cast<std::uint64_t>(k0 + i)));
                sum += mu + sigma * standard_normal(ws);
            }
            break;
        }
        case RewardFamily::deterministic:
            for (std::int64_t i = 0; i < count; ++i) sum += mu;
            break;
    }

    ledger_.per_arm[arm] += count;
    ledger_.total += count;
    return sum / static_cast<double>(count);
}

}  // namespace bestarm
