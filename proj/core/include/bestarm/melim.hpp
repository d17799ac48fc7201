#pragma once
/*
Median Elimination: returns an epsilon-optimal arm with probability >= 1-delta.

Round schedule: eps_1 = eps/4, delta_1 = delta/2, m_l = ceil(4/eps_l^2 *
ln(3/delta_l)) pulls per surviving arm, keep the ceil(|S|/2) arms with the
highest fresh empirical means (ties at the median go to the lower external
index), then eps_{l+1} = (3/4) eps_l, delta_{l+1} = delta_l / 2. Samples are
never reused across rounds.
*/

#include <cstdint>
#include <vector>

#include "bestarm/env.hpp"

namespace bestarm {

struct MERound {
    double epsilon = 0.0;
    double delta = 0.0;
    std::int64_t m = 0;  // pulls per surviving arm this round
};

// The first `rounds` rounds of the schedule. Throws pull_overflow_error when
// some m_l exceeds pull_cap.
std::vector<MERound> me_schedule(double epsilon, double delta, int rounds,
                                 std::int64_t pull_cap = kDefaultPullCap);

struct MEResult {
    int chosen = -1;
    std::int64_t pulls_used = 0;
    int rounds = 0;
};

MEResult median_eliminate(EnvironmentHandle& env, const std::vector<int>& arms,
                          double epsilon, double delta,
                          std::int64_t pull_cap = kDefaultPullCap);

}  // namespace bestarm
