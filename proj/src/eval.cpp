#include "nestad/eval.hpp"

#include <cmath>
#include <type_traits>

#include "nestad/analytic.hpp"
#include "nestad/dual.hpp"
#include "nestad/nested.hpp"
#include "nestad/symbolic.hpp"

namespace nestad {
namespace {

template <class N>
using Env = std::vector<std::pair<std::string, N>>;

struct PassContext {
    const Program& prog;
    const std::string& active_var;
    std::vector<NestedDiagnostic>* diagnostics;
};

template <class F>
auto with_loc(SourceLoc loc, F&& body) {
    try {
        return body();
    } catch (ArithmeticError& err) {
        err.ensure_location(loc);
        throw;
    }
}

template <class N>
N eval_node(const Expr& e, const Env<N>& env, const PassContext& ctx) {
    switch (e.kind) {
        case Expr::Kind::Constant:
            return N{e.number};
        case Expr::Kind::Variable:
            for (const auto& [name, value] : env)
                if (name == e.name) return value;
            throw UnknownVariableError(e.name);
        case Expr::Kind::Add: {
            // Left operand first, so diagnostics appear in source order.
            const N lhs = eval_node(*e.lhs, env, ctx);
            return lhs + eval_node(*e.rhs, env, ctx);
        }
        case Expr::Kind::Sub: {
            const N lhs = eval_node(*e.lhs, env, ctx);
            return lhs - eval_node(*e.rhs, env, ctx);
        }
        case Expr::Kind::Mul: {
            const N lhs = eval_node(*e.lhs, env, ctx);
            return lhs * eval_node(*e.rhs, env, ctx);
        }
        case Expr::Kind::Div: {
            const N lhs = eval_node(*e.lhs, env, ctx);
            const N rhs = eval_node(*e.rhs, env, ctx);
            return with_loc(e.loc, [&] { return lhs / rhs; });
        }
        case Expr::Kind::Neg:
            return -eval_node(*e.lhs, env, ctx);
        case Expr::Kind::IntPow: {
            const N base = eval_node(*e.lhs, env, ctx);
            return with_loc(e.loc, [&] { return pow_int(base, e.exponent); });
        }
        case Expr::Kind::Pow: {
            // u^v as exp(v log u); log enforces a positive base.
            const N base = eval_node(*e.lhs, env, ctx);
            const N exponent = eval_node(*e.rhs, env, ctx);
            return with_loc(e.loc, [&] { return exp(exponent * log(base)); });
        }
        case Expr::Kind::Call:
            return with_loc(e.loc, [&] {
                N arg = eval_node(*e.lhs, env, ctx);
                if (const FunctionDef* def = ctx.prog.find_def(e.name)) {
                    Env<N> scope{{def->param, std::move(arg)}};
                    return eval_node(*def->body, scope, ctx);
                }
                return apply(lookup_function(e.name), arg);
            });
        case Expr::Kind::DerivCall:
            if constexpr (std::is_same_v<N, Dual>) {
                return with_loc(e.loc, [&] {
                    const FunctionDef* def = ctx.prog.find_def(e.name);
                    if (def == nullptr) throw UnknownFunctionError(e.name);
                    const Dual inner = eval_node(*e.lhs, env, ctx);
                    Env<NestedDual> scope{{def->param, push(inner)}};
                    const NestedDual result = eval_node(*def->body, scope, ctx);
                    const Dual derivative = pop_derivative(result);
                    if (ctx.diagnostics != nullptr)
                        ctx.diagnostics->push_back({e.name, ctx.active_var,
                                                    pop_value(result).val,
                                                    derivative.val, derivative.der});
                    return derivative;
                });
            } else {
                // Validation rejects D inside definitions.
                throw Error("nested-derivative operator in a nested context");
            }
    }
    throw Error("unreachable expression kind");
}

double tolerance(double reference, double rel) {
    return rel * std::max(1.0, std::abs(reference));
}

}  // namespace

EvalReport evaluate(const Program& prog) {
    EvalReport report;
    for (std::size_t active = 0; active < prog.bindings.size(); ++active) {
        Env<Dual> env;
        env.reserve(prog.bindings.size());
        for (std::size_t j = 0; j < prog.bindings.size(); ++j)
            env.emplace_back(prog.bindings[j].name,
                             Dual{prog.bindings[j].value, active == j ? 1.0 : 0.0});
        PassContext ctx{prog, prog.bindings[active].name, &report.nested};
        const Dual result = eval_node<Dual>(*prog.query, env, ctx);
        if (active == 0) report.value = result.val;
        report.derivatives.emplace_back(prog.bindings[active].name, result.der);
    }
    return report;
}

CheckReport run_check(const Program& prog, const EvalReport& report,
                      const CheckOptions& options) {
    CheckReport check;
    RealEnv point;
    for (const Binding& b : prog.bindings) point.emplace_back(b.name, b.value);

    check.value_reference = eval_real(prog.query, point, prog.defs);
    check.value_delta = report.value - check.value_reference;
    check.ok = std::abs(check.value_delta) <=
               tolerance(check.value_reference, options.sym_rel_tol);

    for (const auto& [var, ad] : report.derivatives) {
        DerivativeCheck dc;
        dc.var = var;
        dc.ad = ad;

        ExprPtr derivative = sym_diff(prog.query, var, prog.defs);
        dc.symbolic = eval_real(derivative, point, prog.defs);
        dc.symbolic_delta = ad - dc.symbolic;

        RealEnv sample = point;
        const double x0 = [&] {
            for (const auto& [name, value] : sample)
                if (name == var) return value;
            return 0.0;
        }();
        dc.finite_diff = fd_first(
            [&](double t) {
                for (auto& [name, value] : sample)
                    if (name == var) value = t;
                return eval_real(prog.query, sample, prog.defs);
            },
            x0, options.fd);
        dc.fd_delta = ad - dc.finite_diff;

        dc.ok = std::abs(dc.symbolic_delta) <= tolerance(dc.symbolic, options.sym_rel_tol) &&
                std::abs(dc.fd_delta) <= tolerance(dc.finite_diff, options.fd.rel_tol);
        check.ok = check.ok && dc.ok;
        check.derivatives.push_back(std::move(dc));
    }

    // DerivCall nodes in evaluation order (children before the node itself);
    // diagnostics were recorded pass-major in the same order.
    std::vector<const Expr*> dcalls;
    const auto collect = [&](const Expr& e, const auto& self) -> void {
        if (e.lhs) self(*e.lhs, self);
        if (e.rhs) self(*e.rhs, self);
        if (e.kind == Expr::Kind::DerivCall) dcalls.push_back(&e);
    };
    collect(*prog.query, collect);

    std::size_t diag_index = 0;
    for (const Binding& binding : prog.bindings) {
        for (const Expr* node : dcalls) {
            if (diag_index >= report.nested.size()) break;
            const NestedDiagnostic& diag = report.nested[diag_index++];
            const FunctionDef* def = prog.find_def(node->name);

            NestedCheck nc;
            nc.fn = diag.fn;
            nc.var = diag.var;

            const double y0 = eval_real(node->lhs, point, prog.defs);
            ExprPtr g1 = sym_diff(def->body, def->param, prog.defs);
            ExprPtr g2 = sym_diff(g1, def->param, prog.defs);
            const double dh = eval_real(sym_diff(node->lhs, binding.name, prog.defs),
                                        point, prog.defs);
            nc.nested_symbolic = eval_real(g1, {{def->param, y0}}, prog.defs);
            nc.composite_symbolic = eval_real(g2, {{def->param, y0}}, prog.defs) * dh;

            const auto g_real = [&](double y) {
                return eval_real(def->body, {{def->param, y}}, prog.defs);
            };
            nc.nested_fd = fd_first(g_real, y0, options.fd);

            RealEnv sample = point;
            nc.composite_fd = fd_mixed(
                [&](double t, double y) {
                    for (auto& [name, value] : sample)
                        if (name == binding.name) value = t;
                    return g_real(eval_real(node->lhs, sample, prog.defs) + y);
                },
                binding.value, 0.0, options.fd);

            nc.nested_symbolic_delta = diag.nested_derivative - nc.nested_symbolic;
            nc.composite_symbolic_delta = diag.composite_derivative - nc.composite_symbolic;
            nc.composite_fd_delta = diag.composite_derivative - nc.composite_fd;
            nc.ok = std::abs(nc.nested_symbolic_delta) <=
                        tolerance(nc.nested_symbolic, options.sym_rel_tol) &&
                    std::abs(nc.composite_symbolic_delta) <=
                        tolerance(nc.composite_symbolic, options.sym_rel_tol) &&
                    std::abs(nc.composite_fd_delta) <=
                        tolerance(nc.composite_fd, options.mixed_rel_tol);
            check.ok = check.ok && nc.ok;
            check.nested.push_back(std::move(nc));
        }
    }
    return check;
}

}  // namespace nestad
