#pragma once
/*
Analytic engine: gaps, hardness measures, lower bounds, and the slice
diagnostics used to sanity-check phase counts.

Conventions: the G measure uses log base 2; every delta-dependent bound uses
the natural log. Lower-bound operations never throw on a delta outside the
proof's validity range -- they return the value with delta_in_range unset so
curves can still be plotted.
*/

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "bestarm/env.hpp"

namespace bestarm {

// Delta_i = mu_0 - mu_i for internal ranks i = 1..n; needs >= 2 arms.
std::vector<double> gaps(const BanditInstance& instance);

// Sum of Delta_i^-2, compensated (Kahan) summation. All gaps must be > 0.
double hardness_H(const std::vector<double>& gap_vec);

// Sum of Delta_i^-2 * log2(Delta_i^-2). All gaps must lie in (0, 1].
double hardness_G(const std::vector<double>& gap_vec);

struct BoundValue {
    double value = 0.0;
    bool delta_in_range = false;
};

// c1 * H * ln(1/(8 delta)); valid range delta in (0, e^-8/8).
BoundValue adaptive_lb(double H, double delta, double c1 = 1.0);

struct NonAdaptiveBounds {
    double lb_any = 0.0;    // H * ln(n / (25 delta))
    double lb_worst = 0.0;  // (H n / 2) * ln(1 / (24 delta))
    bool delta_in_range = false;  // delta in (0, e^-3/24)
};
NonAdaptiveBounds nonadaptive_lb(double H, int n, double delta);

// n * ln(n/(25 delta)) for alpha = 0, n^(2 alpha + 1) * ln(1/(24 delta)) otherwise.
double alpha_lb(int n, double alpha, double delta);

// Exact ML error floor for the uniform rule on unit-variance Gaussian arms:
// (1/2) * (1 - prod_i Phi(sqrt(m) * Delta_i)).
double error_lb_exact(const std::vector<double>& gap_vec, std::int64_t m);

struct SliceResult {
    // s -> internal ranks (1-based, i.e. positions in the gap vector plus 1).
    // Slice s >= 1 holds gaps in (5*sqrt(2)*eps_{s+1}, 5*sqrt(2)*eps_s] with
    // eps_s = sqrt(ln(1/delta)/2^s); gaps above the s=1 boundary land in the
    // synthetic slice 0.
    std::map<int, std::vector<int>> slices;
    int s_star = 0;
    int l_pred = 0;
};
SliceResult slice_arms(const std::vector<double>& gap_vec, double delta);

struct TheoryBounds {
    int n_arms = 0;
    double delta = 0.0;
    double H = 0.0;
    double G = 0.0;
    BoundValue adaptive;
    NonAdaptiveBounds nonadaptive;
    std::optional<double> alpha_lower;  // only when alpha is known
    SliceResult slicing;
};

TheoryBounds theory_bounds(const BanditInstance& instance, double delta,
                           std::optional<double> alpha = std::nullopt, double c1 = 1.0);

}  // namespace bestarm
