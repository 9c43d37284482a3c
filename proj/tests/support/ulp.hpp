#pragma once

// ULP-based comparisons for the algebra tests.

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

namespace testsupport {

// Distance in representable doubles between a and b (0 when bit-identical,
// including -0 vs +0). Infinite for NaN or mismatched infinities.
inline std::uint64_t ulp_distance(double a, double b) {
    if (std::isnan(a) || std::isnan(b))
        return std::numeric_limits<std::uint64_t>::max();
    const auto ordered = [](double v) -> std::int64_t {
        const auto bits = std::bit_cast<std::int64_t>(v);
        return bits < 0 ? std::numeric_limits<std::int64_t>::min() - bits : bits;
    };
    const std::int64_t ia = ordered(a == 0.0 ? 0.0 : a);
    const std::int64_t ib = ordered(b == 0.0 ? 0.0 : b);
    return ia > ib ? std::uint64_t(ia) - std::uint64_t(ib)
                   : std::uint64_t(ib) - std::uint64_t(ia);
}

inline bool within_ulps(double a, double b, std::uint64_t n) {
    return ulp_distance(a, b) <= n;
}

// Spacing of doubles at the given magnitude.
inline double ulp_at(double magnitude) {
    const double m = std::abs(magnitude);
    return std::nextafter(m, std::numeric_limits<double>::infinity()) - m;
}

// Reassociation-aware check: a and b must lie within n ulps of each other,
// where near-cancelling sums are measured at the scale of the terms that
// produced them rather than at the scale of the (possibly tiny) result.
inline bool within_ulps_scaled(double a, double b, std::uint64_t n, double term_scale) {
    if (within_ulps(a, b, n)) return true;
    return std::abs(a - b) <= static_cast<double>(n) * ulp_at(term_scale);
}

}  // namespace testsupport
