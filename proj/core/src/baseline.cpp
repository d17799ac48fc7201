#include "bestarm/baseline.hpp"

#include <cmath>

namespace bestarm {

UniformResult uniform_best(EnvironmentHandle& env, std::int64_t m) {
    if (m < 1) throw std::invalid_argument("per-arm budget m must be >= 1");
    if (env.ledger().total != 0) throw std::invalid_argument("uniform_best needs a fresh environment");

    UniformResult out;
    const int n = env.n_arms();
    out.means.resize(n);
    for (int arm = 0; arm < n; ++arm) out.means[arm] = env.pull_mean(arm, m);

    out.chosen = 0;
    for (int arm = 1; arm < n; ++arm) {
        if (out.means[arm] > out.means[out.chosen]) out.chosen = arm;
    }
    out.total_pulls = env.ledger().total;
    return out;
}

std::int64_t sufficient_m(const std::vector<double>& gap_vec, double delta) {
    if (gap_vec.empty()) throw std::invalid_argument("empty gap vector");
    for (double g : gap_vec) {
        if (!(g > 0.0)) throw std::invalid_argument("gaps must be strictly positive");
    }
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");

    const auto failure_ok = [&](std::int64_t m) {
        double sum = 0.0, c = 0.0;
        for (double g : gap_vec) {
            const double y = 2.0 * std::exp(-static_cast<double>(m) * g * g / 2.0) - c;
            const double t = sum + y;
            c = (t - sum) - y;
            sum = t;
        }
        return sum <= delta;
    };

    std::int64_t lo = 1, hi = std::int64_t{1} << 40;
    if (!failure_ok(hi)) throw std::range_error("no m <= 2^40 meets the failure budget");
    if (failure_ok(lo)) return lo;
    while (lo + 1 < hi) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (failure_ok(mid)) hi = mid;
        else lo = mid;
    }
    return hi;
}

}  // namespace bestarm
