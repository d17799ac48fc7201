#pragma once
/*
PRISM best-arm identification and its Conservative variant.

Each phase ell: (1) Median Elimination on the active set with accuracy
(eps_ell, me_delta), (2) n_ell fresh pulls of every active arm, (3) keep the
arms whose phase mean is >= the ME output's phase mean minus 2*eps_ell (ties
at the threshold are retained). Stops at a unique survivor, at the phase cap
(fall back to the final phase's empirical argmax), or on a pull-budget
overflow.

Standard schedule:     n_ell = ell * 2^ell, eps_ell = sqrt(ln(1/delta)/2^ell),
                       ME gets delta^ell;       delta in (0, 0.5].
Conservative schedule: n_ell = 2^ell, eps_ell = sqrt(ln(ell^2/delta)/2^ell),
                       ME gets delta/ell^2;     delta in (0, 0.6].
*/

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bestarm/env.hpp"

namespace bestarm {

enum class PrismVariant { standard, conservative };

std::string variant_name(PrismVariant variant);
PrismVariant variant_from_name(const std::string& name);

struct PhaseSchedule {
    std::int64_t n_ell = 0;
    double eps_ell = 0.0;
    double me_delta = 0.0;
};

PhaseSchedule phase_schedule(int ell, double delta, PrismVariant variant);

// Failure budget of the main PAC guarantee for the standard schedule:
// 3 d^2/(1-d^2) + d/(1-d) + 4 d^2/(1-d^2)^2.
double theorem1_failure_budget(double delta);

struct PhaseLog {
    int phase = 0;
    std::vector<int> active_before;
    int me_output = -1;
    std::int64_t n_ell = 0;
    double eps_ell = 0.0;
    double me_delta = 0.0;
    std::vector<std::pair<int, double>> phase_means;  // (arm, mean)
    double threshold = 0.0;
    std::vector<int> active_after;
    std::int64_t pulls_phase = 0;
};

enum class Termination { unique_survivor, phase_cap, overflow };

std::string termination_name(Termination t);

struct TrialResult {
    int chosen = -1;
    bool correct = false;
    std::int64_t total_pulls = 0;
    int n_phases = 0;
    Termination termination = Termination::unique_survivor;
    bool best_arm_eliminated = false;
    std::vector<PhaseLog> phases;  // filled only when tracing
};

struct PrismOptions {
    int phase_cap = 40;
    std::int64_t pull_cap = kDefaultPullCap;
    bool record_trace = true;
};

// env must be fresh (zero ledger).
TrialResult prism(EnvironmentHandle& env, double delta, PrismVariant variant,
                  const PrismOptions& options = {});

}  // namespace bestarm
