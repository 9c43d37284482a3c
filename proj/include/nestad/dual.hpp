#pragma once

/// Dual numbers: pairs (val, der) with the nilpotent unit e = (0, 1), e^2 = 0.
/// Arithmetic carries a value in the first component and, by construction,
/// the derivative of that value in the second. All values are immutable and
/// every operation returns a fresh value, so duals can be shared freely
/// across threads.

#include <cmath>

#include "nestad/errors.hpp"

namespace nestad {

struct Dual {
    double val = 0.0;
    double der = 0.0;

    constexpr Dual() = default;
    constexpr Dual(double v) : val(v) {}
    constexpr Dual(double v, double d) : val(v), der(d) {}

    // Plain real embedded as (a, 0).
    static constexpr Dual constant(double a) { return {a, 0.0}; }
    // Seeded independent variable (a, 1).
    static constexpr Dual variable(double a) { return {a, 1.0}; }
    // The nilpotent unit (0, 1).
    static constexpr Dual unit() { return {0.0, 1.0}; }

    constexpr bool operator==(const Dual&) const = default;
};

constexpr Dual operator+(Dual a, Dual b) { return {a.val + b.val, a.der + b.der}; }
constexpr Dual operator-(Dual a) { return {-a.val, -a.der}; }
constexpr Dual operator-(Dual a, Dual b) { return {a.val - b.val, a.der - b.der}; }

// Product rule in the second component.
constexpr Dual operator*(Dual a, Dual b) {
    return {a.val * b.val, a.val * b.der + a.der * b.val};
}

constexpr Dual operator*(double alpha, Dual a) { return {alpha * a.val, alpha * a.der}; }
constexpr Dual operator*(Dual a, double alpha) { return alpha * a; }

constexpr Dual inverse(Dual a) {
    if (a.val == 0.0) throw ZeroPrimalError();
    return {1.0 / a.val, -a.der / (a.val * a.val)};
}

// Quotient rule. Undefined when the divisor's primal value is zero.
constexpr Dual operator/(Dual a, Dual b) {
    if (b.val == 0.0) throw ZeroPrimalError();
    return {a.val / b.val, (b.val * a.der - a.val * b.der) / (b.val * b.val)};
}

constexpr Dual& operator+=(Dual& a, Dual b) { return a = a + b; }
constexpr Dual& operator-=(Dual& a, Dual b) { return a = a - b; }
constexpr Dual& operator*=(Dual& a, Dual b) { return a = a * b; }
constexpr Dual& operator/=(Dual& a, Dual b) { return a = a / b; }

inline bool approx_equal(Dual a, Dual b, double tol) {
    return std::abs(a.val - b.val) <= tol && std::abs(a.der - b.der) <= tol;
}

}  // namespace nestad
