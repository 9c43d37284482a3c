#include <cmath>
#include <functional>

#include <doctest.h>

#include "nestad/analytic.hpp"
#include "nestad/finite_diff.hpp"
#include "nestad/nested.hpp"
#include "nestad/parse.hpp"
#include "nestad/symbolic.hpp"
#include "support/quad_ref.hpp"
#include "support/random_gen.hpp"
#include "support/ulp.hpp"

using nestad::Dual;
using nestad::NestedDual;
using namespace testsupport;

namespace {

NestedDual nd(double x, double xp, double xd, double xdp) {
    return NestedDual::from_flat({x, xp, xd, xdp});
}

const NestedDual kZero = nd(0, 0, 0, 0);
const NestedDual kOne = nd(1, 0, 0, 0);

bool flat_equal(const NestedDual& a, const Quad& q) {
    return a.flat() == q;
}

}  // namespace

TEST_CASE("addition is component-wise over all four scalars") {
    const NestedDual a = nd(1, 2, 3, 4);
    CHECK(a + kZero == a);
    CHECK(nd(1, 2, 3, 4) + nd(10, 20, 30, 40) == nd(11, 22, 33, 44));
    const NestedDual b = nd(0.5, -1, 2, -3);
    CHECK(b + (-b) == kZero);
}

TEST_CASE("multiplication expands the four-component product") {
    CHECK(nd(2, 3, 5, 7) * kOne == nd(2, 3, 5, 7));
    CHECK(nd(2, 3, 5, 7) * nd(11, 13, 17, 19) == nd(22, 59, 89, 231));
    CHECK(nestad::epsilon1() * nestad::epsilon2() == nestad::epsilon3());
}

TEST_CASE("subtraction") {
    CHECK(nd(1, 1, 1, 1) - nd(1, 1, 1, 1) == kZero);
    CHECK(nd(5, 5, 5, 5) - nd(1, 2, 3, 4) == nd(4, 3, 2, 1));
    CHECK(kZero - nd(1, 2, 3, 4) == nd(-1, -2, -3, -4));

    Rng rng(201);
    for (int i = 0; i < 1000; ++i) {
        const NestedDual a = random_nested(rng);
        const NestedDual b = random_nested(rng);
        CHECK(a - b == a + (-b));
    }
}

TEST_CASE("inverse") {
    CHECK(inverse(kOne) == kOne);
    const NestedDual a = nd(2, 3, 5, 7);
    const NestedDual inv = inverse(a);
    CHECK(inv == nd(0.5, -0.75, -1.25, 2.0));
    CHECK(approx_equal(a * inv, kOne, 1e-12));
    CHECK_THROWS_AS(inverse(nd(0, 1, 1, 1)), nestad::ZeroPrimalError);
}

TEST_CASE("division") {
    const NestedDual a = nd(4, 3, 2, 1);
    CHECK(approx_equal(a / kOne, a, 0.0));
    CHECK(approx_equal(nd(2, 3, 5, 7) / nd(2, 3, 5, 7), kOne, 1e-12));
    CHECK(approx_equal(nd(2, 3, 5, 7) / nd(4, 0, 0, 0), nd(0.5, 0.75, 1.25, 1.75), 1e-15));
    CHECK_THROWS_AS(nd(1, 0, 0, 0) / nd(0, 1, 0, 0), nestad::ZeroPrimalError);
}

TEST_CASE("real scaling") {
    const NestedDual a = nd(1, 2, 3, 4);
    CHECK(1.0 * a == a);
    CHECK(2.0 * a == nd(2, 4, 6, 8));
    // Algebra compatibility with fixed samples.
    const NestedDual u = nd(1, 0, 1, 0);
    const NestedDual v = nd(1, 1, 0, 0);
    CHECK((2.0 * u) * (3.0 * v) == 6.0 * (u * v));
}

TEST_CASE("embedding duals occupies the first two scalars") {
    CHECK(NestedDual::embed(Dual{4, 10}) == nd(4, 10, 0, 0));
    const NestedDual p = NestedDual::embed(Dual{2, 3}) * NestedDual::embed(Dual{5, 7});
    CHECK(p.der == Dual{0, 0});
    CHECK(NestedDual::embed(Dual{0, 0}) == kZero);

    Rng rng(202);
    for (int i = 0; i < 1000; ++i) {
        const Dual a = random_dual(rng);
        const Dual b = random_dual(rng);
        const NestedDual diff = NestedDual::embed(a) - NestedDual::embed(b);
        const NestedDual prod = NestedDual::embed(a) * NestedDual::embed(b);
        CHECK(diff.der == Dual{0, 0});
        CHECK(prod.der == Dual{0, 0});
    }
}

TEST_CASE("push marks the nested variable with unit seed") {
    CHECK(push(Dual{4, 10}) == nd(4, 10, 1, 0));
    CHECK(push(Dual{0, 1}) == nd(0, 1, 1, 0));
    // Identity nested function: the pushed value itself.
    const NestedDual y = push(Dual{-2.5, 0.75});
    CHECK(y == nd(-2.5, 0.75, 1, 0));
}

TEST_CASE("pop projections") {
    const NestedDual x = nd(4, 10, 1, 0);
    CHECK(pop_value(x) == Dual{4, 10});
    CHECK(pop_derivative(x) == Dual{1, 0});

    Rng rng(203);
    for (int i = 0; i < 100; ++i) {
        const Dual d = random_dual(rng);
        CHECK(pop_value(push(d)) == d);
        CHECK(pop_derivative(push(d)) == Dual{1, 0});
        CHECK(pop_derivative(NestedDual::embed(d)) == Dual{0, 0});
    }
    CHECK(pop_value(kOne) == Dual{1, 0});
}

TEST_CASE("epsilon units multiply per the nilpotent table") {
    const NestedDual e1 = nestad::epsilon1();
    const NestedDual e2 = nestad::epsilon2();
    const NestedDual e3 = nestad::epsilon3();
    CHECK(e1 == nd(0, 1, 0, 0));
    CHECK(e2 == nd(0, 0, 1, 0));
    CHECK(e3 == nd(0, 0, 0, 1));

    CHECK(e1 * e1 == kZero);
    CHECK(e2 * e2 == kZero);
    CHECK(e3 * e3 == kZero);
    CHECK(e1 * e2 == e3);
    CHECK(e2 * e1 == e3);
    CHECK(e1 * e3 == kZero);
    CHECK(e3 * e1 == kZero);
    CHECK(e2 * e3 == kZero);
    CHECK(e3 * e2 == kZero);

    // Basis reconstruction.
    const NestedDual rebuilt =
        nd(1, 0, 0, 0) + e1 * nd(2, 0, 0, 0) + e2 * nd(3, 0, 0, 0) + e3 * nd(4, 0, 0, 0);
    CHECK(rebuilt == nd(1, 2, 3, 4));
}

TEST_CASE("flat view round-trips and matches the reference arithmetic") {
    CHECK(NestedDual{Dual{4, 10}, Dual{1, 0}}.flat() == Quad{4, 10, 1, 0});
    CHECK(NestedDual::from_flat({1, 2, 3, 4}).flat() == Quad{1, 2, 3, 4});

    // Fixed multiplication sample through both routes.
    const NestedDual a = nd(2, 3, 5, 7);
    const NestedDual b = nd(11, 13, 17, 19);
    CHECK(flat_equal(a * b, quad_mul(a.flat(), b.flat())));
    CHECK(quad_mul(a.flat(), b.flat()) == Quad{22, 59, 89, 231});

    Rng rng(204);
    for (int i = 0; i < 2000; ++i) {
        const NestedDual x = random_nested(rng);
        const NestedDual y = random_nested(rng);
        const Quad sum = quad_add(x.flat(), y.flat());
        const Quad prod = quad_mul(x.flat(), y.flat());
        const auto got_sum = (x + y).flat();
        const auto got_prod = (x * y).flat();
        for (int k = 0; k < 4; ++k) {
            CHECK(within_ulps(got_sum[k], sum[k], 2));
            CHECK(within_ulps(got_prod[k], prod[k], 2));
        }
    }
}

TEST_CASE("inverse against the flat formula") {
    Rng rng(205);
    for (int i = 0; i < 1000; ++i) {
        const NestedDual a = random_invertible_nested(rng, 1e-3, 1e3);
        const Quad ref = quad_inverse(a.flat());
        const auto got = inverse(a).flat();
        for (int k = 0; k < 4; ++k)
            CHECK(std::abs(got[k] - ref[k]) <=
                  1e-12 * std::max(1.0, std::abs(ref[k])));
    }
}

TEST_CASE("ring axioms on random 4-tuples") {
    Rng rng(206);
    for (int i = 0; i < 2000; ++i) {
        const NestedDual a = random_nested(rng);
        const NestedDual b = random_nested(rng);
        const NestedDual c = random_nested(rng);

        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a + kZero == a);
        CHECK(a * kOne == a);

        const auto norm1 = [](const NestedDual& v) {
            const auto f = v.flat();
            return std::abs(f[0]) + std::abs(f[1]) + std::abs(f[2]) + std::abs(f[3]);
        };

        // Associativity up to reassociation rounding; the rest is exact.
        const double sum_scale = norm1(a) + norm1(b) + norm1(c);
        const auto sum_l = ((a + b) + c).flat();
        const auto sum_r = (a + (b + c)).flat();
        for (int k = 0; k < 4; ++k)
            CHECK(within_ulps_scaled(sum_l[k], sum_r[k], 4, sum_scale));

        const double scale = norm1(a) * norm1(b) * norm1(c);
        const auto assoc_l = ((a * b) * c).flat();
        const auto assoc_r = (a * (b * c)).flat();
        const auto dist_l = (a * (b + c)).flat();
        const auto dist_r = (a * b + a * c).flat();
        for (int k = 0; k < 4; ++k) {
            CHECK(within_ulps_scaled(assoc_l[k], assoc_r[k], 4, scale));
            CHECK(within_ulps_scaled(dist_l[k], dist_r[k], 4, scale));
        }
    }
}

TEST_CASE("inverse identity over a wide magnitude range") {
    Rng rng(207);
    for (int i = 0; i < 1000; ++i) {
        const NestedDual a = random_invertible_nested(rng, 1e-6, 1e3);
        const auto product = (a * inverse(a)).flat();
        CHECK(std::abs(product[0] - 1.0) <= 1e-12);
        CHECK(std::abs(product[1]) <= 1e-12);
        CHECK(std::abs(product[2]) <= 1e-12);
        CHECK(std::abs(product[3]) <= 1e-12);
    }
}

TEST_CASE("embedded reals stay embedded under subtraction and product") {
    Rng rng(208);
    for (int i = 0; i < 1000; ++i) {
        const NestedDual a = NestedDual::constant(uniform(rng, -10, 10));
        const NestedDual b = NestedDual::constant(uniform(rng, -10, 10));
        const auto diff = (a - b).flat();
        const auto prod = (a * b).flat();
        for (int k = 1; k < 4; ++k) {
            CHECK(diff[k] == 0.0);
            CHECK(prod[k] == 0.0);
        }
    }
}

TEST_CASE("nested evaluation carries all four derivatives of a pushed chain") {
    using nestad::ExprPtr;
    using nestad::fd_first;
    using nestad::fd_mixed;

    // Each case pairs an expression e(y), written once as source for the
    // oracle and once in nested-dual arithmetic, with an inner map h(x).
    struct Case {
        const char* e_src;
        const char* h_src;
        double x0;
        std::function<NestedDual(NestedDual)> e_fn;
    };
    const Case cases[] = {
        {"exp(y^2)", "x^3", 0.5,
         [](NestedDual y) { return exp(nestad::pow_int(y, 2)); }},
        {"sin(y)*y", "x^2 + 1", 0.8, [](NestedDual y) { return sin(y) * y; }},
        {"y / (1 + y^2)", "sin(x) + 2", 0.4,
         [](NestedDual y) { return y / (NestedDual{1.0} + nestad::pow_int(y, 2)); }},
        {"sqrt(y) + 1/y", "exp(x)", 0.3,
         [](NestedDual y) { return sqrt(y) + NestedDual{1.0} / y; }},
        {"log(y) * y - y", "x^2 + 2", 1.1,
         [](NestedDual y) { return log(y) * y - y; }},
        {"(y - 1) / (y + 1)", "cos(x) + 3", 0.9,
         [](NestedDual y) {
             return (y - NestedDual{1.0}) / (y + NestedDual{1.0});
         }},
    };

    for (const Case& c : cases) {
        CAPTURE(c.e_src);
        CAPTURE(c.h_src);
        const ExprPtr e = nestad::parse_expression(c.e_src);
        const ExprPtr h = nestad::parse_expression(c.h_src);
        const ExprPtr de = nestad::sym_diff(e, "y", {});
        const ExprPtr d2e = nestad::sym_diff(de, "y", {});
        const ExprPtr dh = nestad::sym_diff(h, "x", {});

        const double y0 = nestad::eval_real(h, {{"x", c.x0}}, {});
        const double h1 = nestad::eval_real(dh, {{"x", c.x0}}, {});
        const NestedDual result = c.e_fn(push(Dual{y0, h1}));

        // Closed-form references for all four scalars.
        const double value = nestad::eval_real(e, {{"y", y0}}, {});
        const double nested = nestad::eval_real(de, {{"y", y0}}, {});
        const double original = nested * h1;
        const double composite = nestad::eval_real(d2e, {{"y", y0}}, {}) * h1;
        const auto rel9 = [](double got, double want) {
            return std::abs(got - want) <= 1e-9 * std::max(1.0, std::abs(want));
        };
        CHECK(rel9(result.val.val, value));
        CHECK(rel9(result.val.der, original));
        CHECK(rel9(result.der.val, nested));
        CHECK(rel9(result.der.der, composite));

        // Finite-difference references for the derivative part.
        const auto e_real = [&](double y) {
            return nestad::eval_real(e, {{"y", y}}, {});
        };
        const double nested_fd = fd_first(e_real, y0);
        CHECK(std::abs(result.der.val - nested_fd) <=
              std::max(1e-5, 1e-5 * std::abs(nested_fd)));
        const double composite_fd = fd_mixed(
            [&](double x, double dy) {
                return e_real(nestad::eval_real(h, {{"x", x}}, {}) + dy);
            },
            c.x0, 0.0);
        CHECK(std::abs(result.der.der - composite_fd) <=
              std::max(1e-5, 1e-5 * std::abs(composite_fd)));
    }
}
