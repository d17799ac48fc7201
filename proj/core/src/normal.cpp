#include "bestarm/normal.hpp"

#include <cmath>

namespace bestarm {

double norm_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

namespace detail {

namespace {

// Doornik ZIGNOR constants for 128 layers.
constexpr double kZigV = 9.91256303526217e-3;

ZigguratTables build_tables() {
    ZigguratTables t{};
    double f = std::exp(-0.5 * kZigR * kZigR);
    t.x[0] = kZigV / f;  // pseudo width of the base strip
    t.x[1] = kZigR;
    t.x[kZigLayers] = 0.0;
    for (int i = 2; i < kZigLayers; ++i) {
        t.x[i] = std::sqrt(-2.0 * std::log(kZigV / t.x[i - 1] + f));
        f = std::exp(-0.5 * t.x[i] * t.x[i]);
    }
    for (int i = 0; i < kZigLayers; ++i) t.ratio[i] = t.x[i + 1] / t.x[i];
    return t;
}

}  // namespace

const ZigguratTables& ziggurat_tables() {
    static const ZigguratTables tables = build_tables();
    return tables;
}

double ziggurat_tail(PullStream& ws, bool negative) {
    double x, y;
    do {
        x = std::log(to_unit01(ws.next())) / kZigR;
        y = std::log(to_unit01(ws.next()));
    } while (-2.0 * y < x * x);
    return negative ? x - kZigR : kZigR - x;
}

}  // namespace detail
}  // namespace bestarm
