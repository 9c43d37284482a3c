#pragma once

/// Abstract syntax of the expression language. Trees are immutable and
/// shared; DerivCall is the nested-derivative operator D(name)(argument).

#include <memory>
#include <string>
#include <vector>

#include "nestad/errors.hpp"

namespace nestad {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind {
        Constant,   // number
        Variable,   // name
        Add, Sub, Mul, Div,  // lhs op rhs
        Neg,        // -lhs
        Pow,        // lhs ^ rhs
        IntPow,     // lhs ^ exponent (integer literal)
        Call,       // name(lhs)
        DerivCall,  // D(name)(lhs)
    };

    Kind kind{};
    double number = 0.0;
    std::string name;
    ExprPtr lhs;
    ExprPtr rhs;
    long exponent = 0;
    SourceLoc loc{};
};

inline ExprPtr expr_constant(double v, SourceLoc loc = {}) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Constant;
    e->number = v;
    e->loc = loc;
    return e;
}

inline ExprPtr expr_variable(std::string name, SourceLoc loc = {}) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Variable;
    e->name = std::move(name);
    e->loc = loc;
    return e;
}

inline ExprPtr expr_binary(Expr::Kind kind, ExprPtr lhs, ExprPtr rhs,
                           SourceLoc loc = {}) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->lhs = std::move(lhs);
    e->rhs = std::move(rhs);
    e->loc = loc;
    return e;
}

inline ExprPtr expr_neg(ExprPtr operand, SourceLoc loc = {}) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Neg;
    e->lhs = std::move(operand);
    e->loc = loc;
    return e;
}

inline ExprPtr expr_int_pow(ExprPtr base, long n, SourceLoc loc = {}) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::IntPow;
    e->lhs = std::move(base);
    e->exponent = n;
    e->loc = loc;
    return e;
}

inline ExprPtr expr_call(std::string name, ExprPtr arg, SourceLoc loc = {}) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Call;
    e->name = std::move(name);
    e->lhs = std::move(arg);
    e->loc = loc;
    return e;
}

inline ExprPtr expr_deriv_call(std::string name, ExprPtr arg, SourceLoc loc = {}) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::DerivCall;
    e->name = std::move(name);
    e->lhs = std::move(arg);
    e->loc = loc;
    return e;
}

// Single-parameter user definition: def name(param) = body;
struct FunctionDef {
    std::string name;
    std::string param;
    ExprPtr body;
    SourceLoc loc{};
};

struct Binding {
    std::string name;
    double value = 0.0;
    SourceLoc loc{};
};

struct Program {
    std::vector<FunctionDef> defs;  // in definition order
    ExprPtr query;
    std::vector<Binding> bindings;  // in binding order

    const FunctionDef* find_def(std::string_view name) const {
        for (const FunctionDef& d : defs)
            if (d.name == name) return &d;
        return nullptr;
    }
};

bool structurally_equal(const Expr& a, const Expr& b);

// Canonical text forms; reparsing them yields structurally identical trees.
std::string to_string(const Expr& e);
std::string to_string(const Program& p);

}  // namespace nestad
