#pragma once
/*
Bandit problem instances and the only sampling channel algorithms may use.

A BanditInstance keeps its means in internal rank order (best first) and
hides that order behind a permutation; algorithms see external arm indices
only. The EnvironmentHandle owns the per-trial pull ledger and derives every
reward from (master_seed, trial_id, arm, pull_index), so replays are
bit-exact and distinct trials never share RNG state.
*/

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bestarm/rng.hpp"

namespace bestarm {

enum class RewardFamily { bernoulli, gaussian, deterministic };

std::string family_name(RewardFamily family);
RewardFamily family_from_name(const std::string& name);

inline constexpr std::int64_t kDefaultPullCap = std::int64_t{1} << 31;

// A single sampling request exceeded the configured pull budget.
class pull_overflow_error : public std::runtime_error {
public:
    pull_overflow_error(std::int64_t requested, std::int64_t cap)
        : std::runtime_error("pull request of " + std::to_string(requested) +
                             " exceeds cap " + std::to_string(cap)),
          requested_(requested),
          cap_(cap) {}

    std::int64_t requested() const { return requested_; }
    std::int64_t cap() const { return cap_; }

private:
    std::int64_t requested_;
    std::int64_t cap_;
};

class BanditInstance {
public:
    // means_by_rank must be non-increasing, inside [0,1], with a strictly
    // largest first entry; ties among the suboptimal means are fine.
    BanditInstance(std::vector<double> means_by_rank, RewardFamily family,
                   double sigma = 0.25);

    int n_arms() const { return static_cast<int>(means_.size()); }
    RewardFamily family() const { return family_; }
    double sigma() const { return sigma_; }

    double mean_of_rank(int rank) const { return means_.at(rank); }
    double mean_of_external(int arm) const { return means_[rank_of_.at(arm)]; }
    int rank_of_external(int arm) const { return rank_of_.at(arm); }
    int external_of_rank(int rank) const { return external_of_.at(rank); }
    int best_external() const { return external_of_[0]; }
    const std::vector<double>& means_by_rank() const { return means_; }

    // Same mean multiset, fresh uniform permutation drawn from seed.
    BanditInstance shuffled(std::uint64_t seed) const;

private:
    std::vector<double> means_;       // internal rank order, best first
    RewardFamily family_;
    double sigma_;
    std::vector<int> rank_of_;        // external index -> rank
    std::vector<int> external_of_;    // rank -> external index
};

// Rank-i mean mu0 - gap_scale * (i/n)^alpha, rank 0 mean mu0, identity
// permutation. n >= 1, alpha >= 0, mu0 in (0,1], gap_scale in (0, mu0].
BanditInstance make_alpha_instance(int n, double alpha, double mu0, double gap_scale,
                                   RewardFamily family = RewardFamily::bernoulli,
                                   double sigma = 0.25);

inline BanditInstance shuffle_instance(const BanditInstance& instance, std::uint64_t seed) {
    return instance.shuffled(seed);
}

struct PullLedger {
    std::vector<std::int64_t> per_arm;
    std::int64_t total = 0;
};

class EnvironmentHandle {
public:
    EnvironmentHandle(BanditInstance instance, std::uint64_t master_seed,
                      std::uint64_t trial_id);

    // One draw from the arm's family; ledger count advances by exactly 1.
    double pull(int arm);

    // Mean of `count` consecutive pulls of `arm`. Bit-identical to calling
    // pull() count times and averaging the rewards in order.
    double pull_mean(int arm, std::int64_t count);

    int n_arms() const { return instance_.n_arms(); }
    const BanditInstance& instance() const { return instance_; }
    const PullLedger& ledger() const { return ledger_; }
    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t trial_id() const { return trial_id_; }

private:
    void check_arm(int arm) const;

    BanditInstance instance_;
    std::uint64_t master_seed_;
    std::uint64_t trial_id_;
    std::vector<std::uint64_t> arm_keys_;       // by external index
    std::vector<double> mean_by_external_;
    PullLedger ledger_;
};

}  // namespace bestarm
