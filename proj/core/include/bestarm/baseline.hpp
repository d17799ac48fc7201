#pragma once
/*
Non-adaptive baseline: pull every arm m times, pick the largest empirical
mean (ties to the lowest external index), plus the smallest per-arm budget
whose union-bound/Hoeffding failure probability stays under delta.
*/

#include <cstdint>
#include <vector>

#include "bestarm/env.hpp"

namespace bestarm {

struct UniformResult {
    int chosen = -1;
    std::int64_t total_pulls = 0;       // exactly m * n_arms
    std::vector<double> means;          // empirical mean by external index
};

UniformResult uniform_best(EnvironmentHandle& env, std::int64_t m);

// Smallest m with sum_i 2*exp(-m*Delta_i^2/2) <= delta, by integer binary
// search over [1, 2^40]; throws std::range_error when no such m exists.
std::int64_t sufficient_m(const std::vector<double>& gap_vec, double delta);

}  // namespace bestarm
