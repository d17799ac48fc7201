#include "bestarm/prism.hpp"

#include <algorithm>
#include <cmath>

#include "bestarm/melim.hpp"

namespace bestarm {

std::string variant_name(PrismVariant variant) {
    return variant == PrismVariant::standard ? "standard" : "conservative";
}

PrismVariant variant_from_name(const std::string& name) {
    if (name == "standard") return PrismVariant::standard;
    if (name == "conservative") return PrismVariant::conservative;
    throw std::invalid_argument("unknown variant: " + name);
}

std::string termination_name(Termination t) {
    switch (t) {
        case Termination::unique_survivor: return "unique_survivor";
        case Termination::phase_cap: return "phase_cap";
        case Termination::overflow: return "overflow";
    }
    throw std::logic_error("unknown termination");
}

namespace {

void check_delta(double delta, PrismVariant variant) {
    const double hi = variant == PrismVariant::standard ? 0.5 : 0.6;
    if (!(delta > 0.0 && delta <= hi))
        throw std::invalid_argument("delta out of range for " + variant_name(variant) +
                                    " schedule");
}

}  // namespace

PhaseSchedule phase_schedule(int ell, double delta, PrismVariant variant) {
    if (ell < 1) throw std::invalid_argument("phase index must be >= 1");
    if (ell > 56) throw std::invalid_argument("phase index too large for 64-bit pull counts");
    check_delta(delta, variant);
    PhaseSchedule out;
    const double two_ell = std::exp2(static_cast<double>(ell));
    if (variant == PrismVariant::standard) {
        out.n_ell = static_cast<std::int64_t>(ell) << ell;
        out.eps_ell = std::sqrt(std::log(1.0 / delta) / two_ell);
        out.me_delta = std::pow(delta, static_cast<double>(ell));
    } else {
        out.n_ell = std::int64_t{1} << ell;
        out.eps_ell = std::sqrt(std::log(ell * static_cast<double>(ell) / delta) / two_ell);
        out.me_delta = delta / (ell * static_cast<double>(ell));
    }
    return out;
}

double theorem1_failure_budget(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
    const double d2 = delta * delta;
    return 3.0 * d2 / (1.0 - d2) + delta / (1.0 - delta) + 4.0 * d2 / ((1.0 - d2) * (1.0 - d2));
}

TrialResult prism(EnvironmentHandle& env, double delta, PrismVariant variant,
                  const PrismOptions& options) {
    check_delta(delta, variant);
    if (options.phase_cap < 1) throw std::invalid_argument("phase_cap must be >= 1");
    if (env.ledger().total != 0) throw std::invalid_argument("prism needs a fresh environment");

    const int best = env.instance().best_external();
    TrialResult result;

    std::vector<int> active(env.n_arms());
    for (int a = 0; a < env.n_arms(); ++a) active[a] = a;

    if (active.size() == 1) {
        result.chosen = active.front();
        result.correct = result.chosen == best;
        result.termination = Termination::unique_survivor;
        return result;
    }

    std::vector<std::pair<int, double>> means;   // (arm, phase mean)
    std::vector<std::pair<int, double>> last_means;

    for (int ell = 1;; ++ell) {
        if (ell > options.phase_cap) {
            result.termination = Termination::phase_cap;
            break;
        }
        if (ell > 56) {  // pull counts would no longer fit in 64 bits
            result.termination = Termination::overflow;
            break;
        }
        const PhaseSchedule sched = phase_schedule(ell, delta, variant);
        const std::int64_t pulls_before = env.ledger().total;

        int me_output;
        try {
            if (sched.n_ell > options.pull_cap)
                throw pull_overflow_error(sched.n_ell, options.pull_cap);
            me_output = median_eliminate(env, active, sched.eps_ell, sched.me_delta,
                                         options.pull_cap)
                            .chosen;
        } catch (const pull_overflow_error&) {
            result.termination = Termination::overflow;
            break;
        }

        means.clear();
        means.reserve(active.size());
        double me_mean = 0.0;
        for (int arm : active) {
            const double mu_hat = env.pull_mean(arm, sched.n_ell);
            means.emplace_back(arm, mu_hat);
            if (arm == me_output) me_mean = mu_hat;
        }
        const double threshold = me_mean - 2.0 * sched.eps_ell;

        std::vector<int> next_active;
        next_active.reserve(active.size());
        for (const auto& [arm, mu_hat] : means) {
            if (mu_hat >= threshold) next_active.push_back(arm);
        }

        const bool best_was_active =
            std::find(active.begin(), active.end(), best) != active.end();
        const bool best_survives =
            std::find(next_active.begin(), next_active.end(), best) != next_active.end();
        if (best_was_active && !best_survives) result.best_arm_eliminated = true;

        result.n_phases = ell;
        if (options.record_trace) {
            PhaseLog log;
            log.phase = ell;
            log.active_before = active;
            log.me_output = me_output;
            log.n_ell = sched.n_ell;
            log.eps_ell = sched.eps_ell;
            log.me_delta = sched.me_delta;
            log.phase_means = means;
            log.threshold = threshold;
            log.active_after = next_active;
            log.pulls_phase = env.ledger().total - pulls_before;
            result.phases.push_back(std::move(log));
        }

        last_means = means;
        active = std::move(next_active);
        if (active.size() == 1) {
            result.termination = Termination::unique_survivor;
            break;
        }
    }

    if (result.termination == Termination::unique_survivor) {
        result.chosen = active.front();
    } else {
        // Fall back to the last completed phase's empirical argmax, ties to
        // the lowest external index; with no completed phase, the lowest
        // active arm.
        if (!last_means.empty()) {
            int arg = last_means.front().first;
            double top = last_means.front().second;
            for (const auto& [arm, mu_hat] : last_means) {
                if (mu_hat > top || (mu_hat == top && arm < arg)) {
                    top = mu_hat;
                    arg = arm;
                }
            }
            result.chosen = arg;
        } else {
            result.chosen = *std::min_element(active.begin(), active.end());
        }
    }

    result.correct = result.chosen == best;
    result.total_pulls = env.ledger().total;
    return result;
}

}  // namespace bestarm
