#include "bestarm/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "bestarm/normal.hpp"

namespace bestarm {

namespace {

// Kahan compensated sum of f(g) over the gap vector.
template <class F>
double compensated_sum(const std::vector<double>& gap_vec, F&& term) {
    double sum = 0.0, c = 0.0;
    for (double g : gap_vec) {
        const double y = term(g) - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    return sum;
}

void require_positive_gaps(const std::vector<double>& gap_vec) {
    for (double g : gap_vec) {
        if (!(g > 0.0)) throw std::invalid_argument("gaps must be strictly positive");
    }
}

}  // namespace

std::vector<double> gaps(const BanditInstance& instance) {
    if (instance.n_arms() < 2)
        throw std::invalid_argument("gap vector undefined for a single-arm instance");
    const auto& means = instance.means_by_rank();
    std::vector<double> out(means.size() - 1);
    for (std::size_t i = 1; i < means.size(); ++i) out[i - 1] = means[0] - means[i];
    return out;
}

double hardness_H(const std::vector<double>& gap_vec) {
    require_positive_gaps(gap_vec);
    return compensated_sum(gap_vec, [](double g) { return 1.0 / (g * g); });
}

double hardness_G(const std::vector<double>& gap_vec) {
    for (double g : gap_vec) {
        if (!(g > 0.0 && g <= 1.0))
            throw std::invalid_argument("G is defined for gaps in (0, 1]");
    }
    return compensated_sum(gap_vec, [](double g) {
        const double inv = 1.0 / (g * g);
        return inv * std::log2(inv);
    });
}

BoundValue adaptive_lb(double H, double delta, double c1) {
    if (!(H > 0.0)) throw std::invalid_argument("H must be positive");
    if (!(c1 > 0.0)) throw std::invalid_argument("c1 must be positive");
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    BoundValue out;
    out.value = c1 * H * std::log(1.0 / (8.0 * delta));
    out.delta_in_range = delta < std::exp(-8.0) / 8.0;
    return out;
}

NonAdaptiveBounds nonadaptive_lb(double H, int n, double delta) {
    if (!(H > 0.0)) throw std::invalid_argument("H must be positive");
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    NonAdaptiveBounds out;
    out.lb_any = H * std::log(n / (25.0 * delta));
    out.lb_worst = H * n / 2.0 * std::log(1.0 / (24.0 * delta));
    out.delta_in_range = delta < std::exp(-3.0) / 24.0;
    return out;
}

double alpha_lb(int n, double alpha, double delta) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    if (alpha == 0.0) return n * std::log(n / (25.0 * delta));
    return std::pow(static_cast<double>(n), 2.0 * alpha + 1.0) * std::log(1.0 / (24.0 * delta));
}

double error_lb_exact(const std::vector<double>& gap_vec, std::int64_t m) {
    require_positive_gaps(gap_vec);
    if (m < 0) throw std::invalid_argument("m must be non-negative");
    // 1 - prod Phi(x_i) via -expm1(sum log(Phi)) keeps full precision when
    // the product is close to 1; log(Phi) = log1p(-Q) with Q the upper tail.
    double log_prod = 0.0;
    for (double g : gap_vec) {
        const double x = std::sqrt(static_cast<double>(m)) * g;
        const double q = 0.5 * std::erfc(x / std::sqrt(2.0));
        log_prod += std::log1p(-q);
    }
    return 0.5 * -std::expm1(log_prod);
}

SliceResult slice_arms(const std::vector<double>& gap_vec, double delta) {
    require_positive_gaps(gap_vec);
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
    if (gap_vec.empty()) throw std::invalid_argument("empty gap vector");

    const double L = std::log(1.0 / delta);
    // Right-closed boundary of slice s: 5*sqrt(2)*eps_s = sqrt(50 L / 2^s).
    const auto boundary = [L](int s) { return std::sqrt(50.0 * L / std::exp2(static_cast<double>(s))); };

    SliceResult out;
    for (std::size_t idx = 0; idx < gap_vec.size(); ++idx) {
        const double g = gap_vec[idx];
        int s;
        if (g > boundary(1)) {
            s = 0;  // oversized gaps go to the synthetic top slice
        } else {
            s = static_cast<int>(std::floor(std::log2(25.0 * L / (g * g)))) + 1;
            if (s < 1) s = 1;
            // Settle float boundary cases against the defining comparisons.
            while (s > 1 && g > boundary(s)) --s;
            while (g <= boundary(s + 1)) ++s;
        }
        out.slices[s].push_back(static_cast<int>(idx) + 1);
    }

    const double min_gap = *std::min_element(gap_vec.begin(), gap_vec.end());
    const double H = hardness_H(gap_vec);
    out.s_star = static_cast<int>(std::ceil(std::log2(L / (min_gap * min_gap))));
    out.l_pred = static_cast<int>(std::ceil(
        std::log2(2.0 * L) + std::max(std::log2(1.0 / (min_gap * min_gap)),
                                      std::log2(2500.0 * H * min_gap * min_gap))));
    return out;
}

TheoryBounds theory_bounds(const BanditInstance& instance, double delta,
                           std::optional<double> alpha, double c1) {
    TheoryBounds out;
    out.n_arms = instance.n_arms();
    out.delta = delta;
    const auto gap_vec = gaps(instance);
    const int n = static_cast<int>(gap_vec.size());
    out.H = hardness_H(gap_vec);
    out.G = hardness_G(gap_vec);
    out.adaptive = adaptive_lb(out.H, delta, c1);
    out.nonadaptive = nonadaptive_lb(out.H, n, delta);
    if (alpha) out.alpha_lower = alpha_lb(n, *alpha, delta);
    out.slicing = slice_arms(gap_vec, delta);
    return out;
}

}  // namespace bestarm
