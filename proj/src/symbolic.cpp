#include "nestad/symbolic.hpp"

#include <cmath>

#include "nestad/analytic.hpp"
#include "nestad/errors.hpp"

namespace nestad {
namespace {

bool is_const(const ExprPtr& e, double v) {
    return e->kind == Expr::Kind::Constant && e->number == v;
}

// Node builders with just enough folding to keep derivative trees readable;
// nothing here rewrites division or other error-carrying shapes.
ExprPtr make_add(ExprPtr a, ExprPtr b) {
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
    if (a->kind == Expr::Kind::Constant && b->kind == Expr::Kind::Constant)
        return expr_constant(a->number + b->number);
    return expr_binary(Expr::Kind::Add, std::move(a), std::move(b));
}

ExprPtr make_sub(ExprPtr a, ExprPtr b) {
    if (is_const(b, 0.0)) return a;
    if (a->kind == Expr::Kind::Constant && b->kind == Expr::Kind::Constant)
        return expr_constant(a->number - b->number);
    if (is_const(a, 0.0)) return expr_neg(std::move(b));
    return expr_binary(Expr::Kind::Sub, std::move(a), std::move(b));
}

ExprPtr make_mul(ExprPtr a, ExprPtr b) {
    if (is_const(a, 0.0) || is_const(b, 0.0)) return expr_constant(0.0);
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
    if (a->kind == Expr::Kind::Constant && b->kind == Expr::Kind::Constant)
        return expr_constant(a->number * b->number);
    return expr_binary(Expr::Kind::Mul, std::move(a), std::move(b));
}

ExprPtr make_div(ExprPtr a, ExprPtr b) {
    if (is_const(b, 1.0)) return a;
    return expr_binary(Expr::Kind::Div, std::move(a), std::move(b));
}

ExprPtr make_neg(ExprPtr a) {
    if (a->kind == Expr::Kind::Constant) return expr_constant(-a->number);
    if (a->kind == Expr::Kind::Neg) return a->lhs;
    return expr_neg(std::move(a));
}

ExprPtr make_int_pow(ExprPtr base, long n) {
    if (n == 0) return expr_constant(1.0);
    if (n == 1) return base;
    return expr_int_pow(std::move(base), n);
}

const FunctionDef* find_def(const std::vector<FunctionDef>& defs,
                            const std::string& name) {
    for (const FunctionDef& d : defs)
        if (d.name == name) return &d;
    return nullptr;
}

// Derivative of a registry function as an expression in its argument.
ExprPtr builtin_derivative(const std::string& name, const ExprPtr& arg) {
    if (name == "exp") return expr_call("exp", arg);
    if (name == "log") return make_div(expr_constant(1.0), arg);
    if (name == "sin") return expr_call("cos", arg);
    if (name == "cos") return make_neg(expr_call("sin", arg));
    if (name == "tan")
        return make_div(expr_constant(1.0), expr_int_pow(expr_call("cos", arg), 2));
    if (name == "sqrt")
        return make_div(expr_constant(1.0),
                        make_mul(expr_constant(2.0), expr_call("sqrt", arg)));
    throw UnknownFunctionError(name);
}

}  // namespace

ExprPtr substitute(const ExprPtr& e, const std::string& var,
                   const ExprPtr& replacement) {
    switch (e->kind) {
        case Expr::Kind::Constant:
            return e;
        case Expr::Kind::Variable:
            return e->name == var ? replacement : e;
        case Expr::Kind::Neg:
            return expr_neg(substitute(e->lhs, var, replacement), e->loc);
        case Expr::Kind::IntPow:
            return expr_int_pow(substitute(e->lhs, var, replacement), e->exponent, e->loc);
        case Expr::Kind::Call:
            return expr_call(e->name, substitute(e->lhs, var, replacement), e->loc);
        case Expr::Kind::DerivCall:
            return expr_deriv_call(e->name, substitute(e->lhs, var, replacement), e->loc);
        default:
            return expr_binary(e->kind, substitute(e->lhs, var, replacement),
                               substitute(e->rhs, var, replacement), e->loc);
    }
}

ExprPtr sym_diff(const ExprPtr& e, const std::string& var,
                 const std::vector<FunctionDef>& defs) {
    switch (e->kind) {
        case Expr::Kind::Constant:
            return expr_constant(0.0);
        case Expr::Kind::Variable:
            return expr_constant(e->name == var ? 1.0 : 0.0);
        case Expr::Kind::Add:
            return make_add(sym_diff(e->lhs, var, defs), sym_diff(e->rhs, var, defs));
        case Expr::Kind::Sub:
            return make_sub(sym_diff(e->lhs, var, defs), sym_diff(e->rhs, var, defs));
        case Expr::Kind::Neg:
            return make_neg(sym_diff(e->lhs, var, defs));
        case Expr::Kind::Mul:
            // (uv)' = u'v + uv'
            return make_add(make_mul(sym_diff(e->lhs, var, defs), e->rhs),
                            make_mul(e->lhs, sym_diff(e->rhs, var, defs)));
        case Expr::Kind::Div:
            // (u/v)' = (u'v - uv') / v^2
            return make_div(
                make_sub(make_mul(sym_diff(e->lhs, var, defs), e->rhs),
                         make_mul(e->lhs, sym_diff(e->rhs, var, defs))),
                expr_int_pow(e->rhs, 2));
        case Expr::Kind::IntPow:
            // (u^n)' = n u^(n-1) u'
            return make_mul(
                make_mul(expr_constant(static_cast<double>(e->exponent)),
                         make_int_pow(e->lhs, e->exponent - 1)),
                sym_diff(e->lhs, var, defs));
        case Expr::Kind::Pow: {
            // u^v = exp(v log u):  (u^v)' = u^v (v' log u + v u'/u)
            ExprPtr du = sym_diff(e->lhs, var, defs);
            ExprPtr dv = sym_diff(e->rhs, var, defs);
            ExprPtr factor = make_add(make_mul(dv, expr_call("log", e->lhs)),
                                      make_div(make_mul(e->rhs, du), e->lhs));
            return make_mul(expr_binary(Expr::Kind::Pow, e->lhs, e->rhs), factor);
        }
        case Expr::Kind::Call: {
            if (const FunctionDef* def = find_def(defs, e->name)) {
                // F(w)' = F'(w) w' with F' obtained symbolically.
                ExprPtr dbody = sym_diff(def->body, def->param, defs);
                return make_mul(substitute(dbody, def->param, e->lhs),
                                sym_diff(e->lhs, var, defs));
            }
            if (find_function(e->name) == nullptr) throw UnknownFunctionError(e->name);
            return make_mul(builtin_derivative(e->name, e->lhs),
                            sym_diff(e->lhs, var, defs));
        }
        case Expr::Kind::DerivCall: {
            // D(g)(w) is dg/dy at w; its derivative is d2g/dy2 at w times w'.
            const FunctionDef* def = find_def(defs, e->name);
            if (def == nullptr) throw UnknownFunctionError(e->name);
            ExprPtr d1 = sym_diff(def->body, def->param, defs);
            ExprPtr d2 = sym_diff(d1, def->param, defs);
            return make_mul(substitute(d2, def->param, e->lhs),
                            sym_diff(e->lhs, var, defs));
        }
    }
    throw Error("unreachable expression kind");
}

double eval_real(const ExprPtr& e, const RealEnv& env,
                 const std::vector<FunctionDef>& defs) {
    switch (e->kind) {
        case Expr::Kind::Constant:
            return e->number;
        case Expr::Kind::Variable:
            for (const auto& [name, value] : env)
                if (name == e->name) return value;
            throw UnknownVariableError(e->name);
        case Expr::Kind::Add:
            return eval_real(e->lhs, env, defs) + eval_real(e->rhs, env, defs);
        case Expr::Kind::Sub:
            return eval_real(e->lhs, env, defs) - eval_real(e->rhs, env, defs);
        case Expr::Kind::Mul:
            return eval_real(e->lhs, env, defs) * eval_real(e->rhs, env, defs);
        case Expr::Kind::Div: {
            const double denom = eval_real(e->rhs, env, defs);
            if (denom == 0.0) throw ZeroPrimalError();
            return eval_real(e->lhs, env, defs) / denom;
        }
        case Expr::Kind::Neg:
            return -eval_real(e->lhs, env, defs);
        case Expr::Kind::IntPow:
            return std::pow(eval_real(e->lhs, env, defs),
                            static_cast<double>(e->exponent));
        case Expr::Kind::Pow: {
            const double base = eval_real(e->lhs, env, defs);
            if (base <= 0.0) throw DomainError("pow", base);
            return std::pow(base, eval_real(e->rhs, env, defs));
        }
        case Expr::Kind::Call: {
            const double arg = eval_real(e->lhs, env, defs);
            if (const FunctionDef* def = find_def(defs, e->name))
                return eval_real(def->body, {{def->param, arg}}, defs);
            return apply(lookup_function(e->name), arg);
        }
        case Expr::Kind::DerivCall: {
            const FunctionDef* def = find_def(defs, e->name);
            if (def == nullptr) throw UnknownFunctionError(e->name);
            const double arg = eval_real(e->lhs, env, defs);
            ExprPtr d1 = sym_diff(def->body, def->param, defs);
            return eval_real(d1, {{def->param, arg}}, defs);
        }
    }
    throw Error("unreachable expression kind");
}

}  // namespace nestad
