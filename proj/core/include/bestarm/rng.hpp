#pragma once
/*
Counter-based random streams.

Every reward is a pure function of (master_seed, trial_id, arm, pull_index),
so a recorded pull sequence replays bit-exactly and trials can run on any
number of workers without shared RNG state. The word for pull k of an arm is
mix64(arm_key + k * golden); consumers that need more than 64 bits per pull
(the normal sampler) derive extra words from the first one.
*/

#include <cstdint>

namespace bestarm {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer (Stafford mix13)
constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

// (0,1), 52 significant bits, endpoints excluded. The +0.5 stays exact below
// 2^52, so the largest word maps to 1 - 2^-53 rather than rounding up to 1.
constexpr double to_unit01(std::uint64_t w) {
    return (static_cast<double>(w >> 12) + 0.5) * 0x1.0p-52;
}

constexpr std::uint64_t trial_key(std::uint64_t master_seed, std::uint64_t trial_id) {
    return mix64(mix64(master_seed + kGolden) ^ mix64(trial_id * kGolden + 1));
}

constexpr std::uint64_t arm_key(std::uint64_t tkey, std::uint32_t arm) {
    return mix64(tkey + (static_cast<std::uint64_t>(arm) + 1) * 0xd1342543de82ef95ULL);
}

constexpr std::uint64_t pull_word(std::uint64_t akey, std::uint64_t pull_index) {
    return mix64(akey + pull_index * kGolden);
}

// j-th extra word of a pull's substream, j >= 1.
constexpr std::uint64_t reword(std::uint64_t w0, unsigned j) {
    return mix64(w0 ^ (static_cast<std::uint64_t>(j) * 0xda942042e4dd58b5ULL));
}

// Unlimited word substream rooted at one pull word.
class PullStream {
public:
    explicit constexpr PullStream(std::uint64_t w0) : w0_(w0) {}
    constexpr std::uint64_t next() {
        const unsigned j = j_++;
        return j == 0 ? w0_ : reword(w0_, j);
    }

private:
    std::uint64_t w0_;
    unsigned j_ = 0;
};

// Small sequential engine for seed-style uses (permutations).
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next() {
        state_ += kGolden;
        return mix64(state_);
    }

    // Unbiased draw from [0, bound), bound >= 1, by rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
        for (;;) {
            const std::uint64_t x = next();
            if (x >= threshold) return x % bound;
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace bestarm
