#pragma once
/*
Monte Carlo experiment runner and scaling sweeps.

Trials are embarrassingly parallel: trial t always uses (master_seed, t) for
its reward stream and a trial-derived permutation, and results are merged in
trial order, so the aggregate (and its CSV/JSON serializations) is
byte-identical at any worker count. Failure trials still contribute their
pulls to mean_pulls; overflow trials are counted separately and excluded
from the means.
*/

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bestarm/env.hpp"
#include "bestarm/prism.hpp"

namespace bestarm {

enum class Algorithm { prism_standard, prism_conservative, uniform };

std::string algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);

struct ExperimentSpec {
    double alpha = 0.3;
    std::vector<int> n_list;        // suboptimal arm counts; instance has n+1 arms
    double mu0 = 0.9;
    double gap_scale = 0.5;
    RewardFamily family = RewardFamily::bernoulli;
    double sigma = 0.25;
    Algorithm algorithm = Algorithm::prism_standard;
    double delta = 0.1;
    std::int64_t m = 0;             // uniform only; 0 means "use sufficient_m"
    int trials = 1;
    std::uint64_t master_seed = 0;
    int jobs = 1;
    std::int64_t pull_cap = kDefaultPullCap;
    int phase_cap = 40;
};

// Throws std::invalid_argument with a parse message on any malformed line.
ExperimentSpec parse_spec_file(const std::string& text);
std::string spec_to_text(const ExperimentSpec& spec);

struct AggregateRow {
    int n = 0;
    int trials = 0;
    int completed = 0;              // trials minus overflows
    int overflows = 0;
    int successes = 0;
    double success_rate = 0.0;      // successes / completed
    double mean_pulls = 0.0;        // over completed trials, failures included
    double stddev_pulls = 0.0;      // sample stddev; 0 when completed < 2
    std::int64_t total_pulls = 0;   // exact ledger sum over completed trials
    std::int64_t best_arm_eliminated = 0;  // PRISM trials that dropped the best arm
    double H = 0.0;
    double G = 0.0;
    double lower_bound = 0.0;       // adaptive_lb for PRISM, nonadaptive lb_any for uniform
    std::string instance_hash;      // git blob hash of the canonical instance JSON
};

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// OLS on (ln x, ln y); needs >= 2 points, x and y positive, x not all equal.
FitResult fit_loglog_slope(const std::vector<std::pair<double, double>>& points);

struct AggregateResult {
    std::vector<AggregateRow> rows;
    std::optional<FitResult> fit;
};

// One aggregate row: `trials` independent runs on the n-arm alpha instance.
AggregateRow run_trials(const ExperimentSpec& spec, int n);

// One row per entry of spec.n_list (>= 4 values spanning >= 2 octaves,
// strictly increasing) plus the log-log fit of mean pulls against n.
AggregateResult scaling_sweep(const ExperimentSpec& spec);

// Fixed column order, floats with 17 significant digits.
std::string rows_to_csv(const std::vector<AggregateRow>& rows);

}  // namespace bestarm
