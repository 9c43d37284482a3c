#pragma once

/// Elementary analytic functions lifted to duals and nested duals. Each
/// registered function carries closed forms for its first and second
/// derivative together with the predicate of its real-analytic domain; the
/// lifts below consume exactly those three rules.

#include <cmath>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "nestad/dual.hpp"
#include "nestad/errors.hpp"
#include "nestad/nested.hpp"

namespace nestad {

struct AnalyticFn {
    std::string name;
    std::function<double(double)> f;
    std::function<double(double)> df;
    std::function<double(double)> d2f;
    std::function<bool(double)> domain;
};

// Immutable after construction; lookups are thread-safe.
inline const std::vector<AnalyticFn>& registry() {
    static const std::vector<AnalyticFn> fns = {
        {"exp", [](double x) { return std::exp(x); },
         [](double x) { return std::exp(x); },
         [](double x) { return std::exp(x); },
         [](double) { return true; }},
        {"log", [](double x) { return std::log(x); },
         [](double x) { return 1.0 / x; },
         [](double x) { return -1.0 / (x * x); },
         [](double x) { return x > 0.0; }},
        {"sin", [](double x) { return std::sin(x); },
         [](double x) { return std::cos(x); },
         [](double x) { return -std::sin(x); },
         [](double) { return true; }},
        {"cos", [](double x) { return std::cos(x); },
         [](double x) { return -std::sin(x); },
         [](double x) { return -std::cos(x); },
         [](double) { return true; }},
        // Poles of tan surface as IEEE overflow, not as domain errors.
        {"tan", [](double x) { return std::tan(x); },
         [](double x) { const double t = std::tan(x); return 1.0 + t * t; },
         [](double x) { const double t = std::tan(x); return 2.0 * t * (1.0 + t * t); },
         [](double) { return true; }},
        // sqrt is analytic only for positive arguments; sqrt(0) is rejected
        // rather than producing an infinite tangent.
        {"sqrt", [](double x) { return std::sqrt(x); },
         [](double x) { return 0.5 / std::sqrt(x); },
         [](double x) { return -0.25 / (x * std::sqrt(x)); },
         [](double x) { return x > 0.0; }},
    };
    return fns;
}

inline const AnalyticFn* find_function(std::string_view name) {
    for (const AnalyticFn& fn : registry())
        if (fn.name == name) return &fn;
    return nullptr;
}

inline const AnalyticFn& lookup_function(std::string_view name) {
    if (const AnalyticFn* fn = find_function(name)) return *fn;
    throw UnknownFunctionError(std::string(name));
}

// Fixed real exponent r as a registry-shaped function t -> t^r.
inline AnalyticFn power_function(double r) {
    return {"pow[" + std::to_string(r) + "]",
            [r](double x) { return std::pow(x, r); },
            [r](double x) { return r * std::pow(x, r - 1.0); },
            [r](double x) { return r * (r - 1.0) * std::pow(x, r - 2.0); },
            [](double x) { return x > 0.0; }};
}

inline double apply(const AnalyticFn& fn, double a) {
    if (!fn.domain(a)) throw DomainError(fn.name, a);
    return fn.f(a);
}

// Truncated Taylor lift: f(a + e a') = f(a) + e a' f'(a).
inline Dual apply(const AnalyticFn& fn, Dual a) {
    if (!fn.domain(a.val)) throw DomainError(fn.name, a.val);
    return {fn.f(a.val), a.der * fn.df(a.val)};
}

// Second-order lift over the four scalars (x, x', xd, xd'):
//   (f(x), x' f'(x), xd f'(x), x' xd f''(x) + xd' f'(x)).
inline NestedDual apply(const AnalyticFn& fn, NestedDual a) {
    const double x = a.val.val;
    if (!fn.domain(x)) throw DomainError(fn.name, x);
    const double f1 = fn.df(x);
    return {Dual{fn.f(x), a.val.der * f1},
            Dual{a.der.val * f1, a.val.der * a.der.val * fn.d2f(x) + a.der.der * f1}};
}

namespace detail {
inline const AnalyticFn& builtin(std::size_t index) { return registry()[index]; }
}  // namespace detail

inline Dual exp(Dual a) { return apply(detail::builtin(0), a); }
inline Dual log(Dual a) { return apply(detail::builtin(1), a); }
inline Dual sin(Dual a) { return apply(detail::builtin(2), a); }
inline Dual cos(Dual a) { return apply(detail::builtin(3), a); }
inline Dual tan(Dual a) { return apply(detail::builtin(4), a); }
inline Dual sqrt(Dual a) { return apply(detail::builtin(5), a); }

inline NestedDual exp(NestedDual a) { return apply(detail::builtin(0), a); }
inline NestedDual log(NestedDual a) { return apply(detail::builtin(1), a); }
inline NestedDual sin(NestedDual a) { return apply(detail::builtin(2), a); }
inline NestedDual cos(NestedDual a) { return apply(detail::builtin(3), a); }
inline NestedDual tan(NestedDual a) { return apply(detail::builtin(4), a); }
inline NestedDual sqrt(NestedDual a) { return apply(detail::builtin(5), a); }

// Integer power by repeated squaring; consistent with the lift of t -> t^n.
// Negative exponents go through the inverse and require a nonzero primal.
template <class T>
constexpr T pow_int(T base, long n) {
    auto m = n < 0 ? ~static_cast<unsigned long>(n) + 1UL  // |n|, safe at LONG_MIN
                   : static_cast<unsigned long>(n);
    T result{1.0};
    T square = base;
    while (m > 0) {
        if (m & 1) result = result * square;
        m >>= 1;
        if (m > 0) square = square * square;
    }
    return n < 0 ? inverse(result) : result;
}

// Real exponent via exp(r log a); defined for positive primal only.
inline Dual pow(Dual a, double r) { return exp(r * log(a)); }
inline NestedDual pow(NestedDual a, double r) { return exp(r * log(a)); }

}  // namespace nestad
