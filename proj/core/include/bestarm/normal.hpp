#pragma once
/*
Standard normal CDF and a ziggurat sampler.

norm_cdf is evaluated through erfc and is the oracle other code checks
against, so its absolute error must stay below 1e-12 (glibc erfc is within a
few ulp; the unit tests pin reference values to 1e-13).

The sampler is Doornik-style ZIGNOR with 128 layers. It usually consumes one
64-bit word per variate: the low 7 bits pick the layer and the high 52 bits
form the signed uniform. Wedge and tail cases draw further words from the
pull's substream.
*/

#include <cmath>
#include <cstdint>

#include "bestarm/rng.hpp"

namespace bestarm {

double norm_cdf(double x);

namespace detail {

inline constexpr int kZigLayers = 128;
inline constexpr double kZigR = 3.442619855899;

struct ZigguratTables {
    double x[kZigLayers + 1];
    double ratio[kZigLayers];  // x[i+1] / x[i]
};

const ZigguratTables& ziggurat_tables();

double ziggurat_tail(PullStream& ws, bool negative);

}  // namespace detail

// One standard normal variate from the pull's word substream.
inline double standard_normal(PullStream& ws) {
    const auto& t = detail::ziggurat_tables();
    for (;;) {
        const std::uint64_t w = ws.next();
        const int i = static_cast<int>(w & 127u);
        const double u = 2.0 * to_unit01(w) - 1.0;  // (-1,1)
        if (u < t.ratio[i] && u > -t.ratio[i]) return u * t.x[i];
        if (i == 0) return detail::ziggurat_tail(ws, u < 0.0);
        const double x = u * t.x[i];
        const double f0 = std::exp(-0.5 * (t.x[i] * t.x[i] - x * x));
        const double f1 = std::exp(-0.5 * (t.x[i + 1] * t.x[i + 1] - x * x));
        if (f1 + to_unit01(ws.next()) * (f0 - f1) < 1.0) return x;
    }
}

}  // namespace bestarm
