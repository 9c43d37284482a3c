#pragma once

/// Nested dual numbers: pairs of duals, flat view (x, x', xd, xd'). When the
/// val field holds a pushed quantity y = h(x), the four scalars carry
///
///   x   value of the inner computation,
///   x'  its derivative with respect to the outermost variable,
///   xd  the nested derivative d/dy,
///   xd' the composite derivative d2/(dx dy).
///
/// The canonical representation is the pair of duals; arithmetic is plain
/// dual arithmetic over dual components. The flat 4-tuple is a derived view.

#include <array>

#include "nestad/dual.hpp"

namespace nestad {

struct NestedDual {
    Dual val{};  // (x, x')
    Dual der{};  // (xd, xd')

    constexpr NestedDual() = default;
    constexpr NestedDual(double v) : val(v) {}
    constexpr NestedDual(Dual v, Dual d) : val(v), der(d) {}

    static constexpr NestedDual constant(double a) { return {Dual{a}, Dual{}}; }
    // Embeds a dual as (a.val, a.der, 0, 0); no nested part.
    static constexpr NestedDual embed(Dual a) { return {a, Dual{}}; }

    static constexpr NestedDual from_flat(const std::array<double, 4>& t) {
        return {Dual{t[0], t[1]}, Dual{t[2], t[3]}};
    }
    constexpr std::array<double, 4> flat() const {
        return {val.val, val.der, der.val, der.der};
    }

    constexpr bool operator==(const NestedDual&) const = default;
};

// The three nilpotent basis units of the flat view. Their only nonzero
// pairwise product is epsilon1 * epsilon2 == epsilon3.
constexpr NestedDual epsilon1() { return {Dual{0.0, 1.0}, Dual{}}; }
constexpr NestedDual epsilon2() { return {Dual{}, Dual{1.0, 0.0}}; }
constexpr NestedDual epsilon3() { return {Dual{}, Dual{0.0, 1.0}}; }

constexpr NestedDual operator+(NestedDual a, NestedDual b) {
    return {a.val + b.val, a.der + b.der};
}
constexpr NestedDual operator-(NestedDual a) { return {-a.val, -a.der}; }
constexpr NestedDual operator-(NestedDual a, NestedDual b) {
    return {a.val - b.val, a.der - b.der};
}
constexpr NestedDual operator*(NestedDual a, NestedDual b) {
    return {a.val * b.val, a.val * b.der + a.der * b.val};
}
constexpr NestedDual operator*(double alpha, NestedDual a) {
    return {alpha * a.val, alpha * a.der};
}
constexpr NestedDual operator*(NestedDual a, double alpha) { return alpha * a; }

constexpr NestedDual inverse(NestedDual a) {
    const Dual iv = inverse(a.val);  // rejects zero primal
    return {iv, -(a.der * iv * iv)};
}

constexpr NestedDual operator/(NestedDual a, NestedDual b) {
    return a * inverse(b);
}

constexpr NestedDual& operator+=(NestedDual& a, NestedDual b) { return a = a + b; }
constexpr NestedDual& operator-=(NestedDual& a, NestedDual b) { return a = a - b; }
constexpr NestedDual& operator*=(NestedDual& a, NestedDual b) { return a = a * b; }
constexpr NestedDual& operator/=(NestedDual& a, NestedDual b) { return a = a / b; }

// Marks x as the nested variable: the nested seed is fixed to (1, 0).
constexpr NestedDual push(Dual x) { return {x, Dual{1.0, 0.0}}; }

// Projections back to duals: the value part (x, x') and the derivative part
// (xd, xd') respectively.
constexpr Dual pop_value(NestedDual a) { return a.val; }
constexpr Dual pop_derivative(NestedDual a) { return a.der; }

inline bool approx_equal(NestedDual a, NestedDual b, double tol) {
    return approx_equal(a.val, b.val, tol) && approx_equal(a.der, b.der, tol);
}

}  // namespace nestad
