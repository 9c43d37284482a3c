#include "nestad/expr.hpp"

#include <cstdio>
#include <string>

namespace nestad {
namespace {

// Precedence levels mirror the grammar: 1 additive, 2 multiplicative,
// 3 unary minus, 4 power, 5 atom.
int precedence(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div: return 2;
        case Expr::Kind::Neg: return 3;
        case Expr::Kind::Pow:
        case Expr::Kind::IntPow: return 4;
        case Expr::Kind::Constant:
            return e.number < 0.0 ? 3 : 5;
        default: return 5;
    }
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void print(const Expr& e, int context, std::string& out) {
    const bool parens = precedence(e) < context;
    if (parens) out += '(';
    switch (e.kind) {
        case Expr::Kind::Constant:
            out += format_number(e.number);
            break;
        case Expr::Kind::Variable:
            out += e.name;
            break;
        case Expr::Kind::Add:
        case Expr::Kind::Sub:
            print(*e.lhs, 1, out);
            out += e.kind == Expr::Kind::Add ? " + " : " - ";
            print(*e.rhs, 2, out);
            break;
        case Expr::Kind::Mul:
        case Expr::Kind::Div:
            print(*e.lhs, 2, out);
            out += e.kind == Expr::Kind::Mul ? " * " : " / ";
            print(*e.rhs, 3, out);
            break;
        case Expr::Kind::Neg:
            out += '-';
            print(*e.lhs, 3, out);
            break;
        case Expr::Kind::Pow:
            print(*e.lhs, 5, out);  // base must sit at atom level
            out += " ^ ";
            print(*e.rhs, 3, out);
            break;
        case Expr::Kind::IntPow:
            print(*e.lhs, 5, out);
            out += " ^ ";
            out += std::to_string(e.exponent);
            break;
        case Expr::Kind::Call:
            out += e.name;
            out += '(';
            print(*e.lhs, 0, out);
            out += ')';
            break;
        case Expr::Kind::DerivCall:
            out += "D(";
            out += e.name;
            out += ")(";
            print(*e.lhs, 0, out);
            out += ')';
            break;
    }
    if (parens) out += ')';
}

}  // namespace

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Expr::Kind::Constant:
            return a.number == b.number;
        case Expr::Kind::Variable:
            return a.name == b.name;
        case Expr::Kind::Neg:
            return structurally_equal(*a.lhs, *b.lhs);
        case Expr::Kind::IntPow:
            return a.exponent == b.exponent && structurally_equal(*a.lhs, *b.lhs);
        case Expr::Kind::Call:
        case Expr::Kind::DerivCall:
            return a.name == b.name && structurally_equal(*a.lhs, *b.lhs);
        default:
            return structurally_equal(*a.lhs, *b.lhs) &&
                   structurally_equal(*a.rhs, *b.rhs);
    }
}

std::string to_string(const Expr& e) {
    std::string out;
    print(e, 0, out);
    return out;
}

std::string to_string(const Program& p) {
    std::string out;
    for (const FunctionDef& def : p.defs) {
        out += "def " + def.name + "(" + def.param + ") = ";
        out += to_string(*def.body);
        out += ";\n";
    }
    out += "eval ";
    out += to_string(*p.query);
    out += " at ";
    for (std::size_t i = 0; i < p.bindings.size(); ++i) {
        if (i > 0) out += ", ";
        out += p.bindings[i].name + " = " + format_number(p.bindings[i].value);
    }
    out += ";\n";
    return out;
}

}  // namespace nestad
