#include "bestarm/melim.hpp"

#include <algorithm>
#include <cmath>

namespace bestarm {

namespace {

std::int64_t round_pull_count(double eps_l, double delta_l, std::int64_t pull_cap) {
    const double m = std::ceil(4.0 / (eps_l * eps_l) * std::log(3.0 / delta_l));
    if (!(m >= 1.0)) return 1;
    if (m > static_cast<double>(pull_cap))
        throw pull_overflow_error(static_cast<std::int64_t>(std::min(m, 9.2e18)), pull_cap);
    return static_cast<std::int64_t>(m);
}

void check_accuracy(double epsilon, double delta) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
}

}  // namespace

std::vector<MERound> me_schedule(double epsilon, double delta, int rounds,
                                 std::int64_t pull_cap) {
    check_accuracy(epsilon, delta);
    if (rounds < 0) throw std::invalid_argument("rounds must be >= 0");
    std::vector<MERound> out;
    out.reserve(rounds);
    double eps_l = epsilon / 4.0;
    double delta_l = delta / 2.0;
    for (int l = 0; l < rounds; ++l) {
        out.push_back({eps_l, delta_l, round_pull_count(eps_l, delta_l, pull_cap)});
        eps_l *= 0.75;
        delta_l *= 0.5;
    }
    return out;
}

MEResult median_eliminate(EnvironmentHandle& env, const std::vector<int>& arms,
                          double epsilon, double delta, std::int64_t pull_cap) {
    check_accuracy(epsilon, delta);
    if (arms.empty()) throw std::invalid_argument("median_eliminate needs a non-empty arm set");
    if (arms.size() == 1) return {arms.front(), 0, 0};

    MEResult result;
    std::vector<int> survivors = arms;
    std::vector<std::pair<double, int>> scored;
    double eps_l = epsilon / 4.0;
    double delta_l = delta / 2.0;

    while (survivors.size() > 1) {
        const std::int64_t m_l = round_pull_count(eps_l, delta_l, pull_cap);
        scored.clear();
        scored.reserve(survivors.size());
        for (int arm : survivors) {
            scored.emplace_back(env.pull_mean(arm, m_l), arm);
            result.pulls_used += m_l;
        }
        // Highest mean first, median ties to the lower external index.
        std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        const std::size_t keep = (scored.size() + 1) / 2;
        survivors.clear();
        for (std::size_t i = 0; i < keep; ++i) survivors.push_back(scored[i].second);

        eps_l *= 0.75;
        delta_l *= 0.5;
        ++result.rounds;
    }

    result.chosen = survivors.front();
    return result;
}

}  // namespace bestarm
