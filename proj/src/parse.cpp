// Recursive-descent parser for the expression language.
//
//   program := def* query
//   def     := "def" IDENT "(" IDENT ")" "=" expr ";"
//   query   := "eval" expr "at" binding ("," binding)* ";"
//   binding := IDENT "=" ["-"] (NUMBER | "pi" | "e")
//   expr    := term (("+" | "-") term)*
//   term    := unary (("*" | "/") unary)*
//   unary   := "-" unary | power
//   power   := atom ["^" unary]          (right-associative)
//   atom    := NUMBER | IDENT | IDENT "(" expr ")"
//            | "D" "(" IDENT ")" "(" expr ")" | "(" expr ")"
//
// "pi" and "e" are named constants, "D" is the nested-derivative operator;
// all three are reserved, as are the keywords. "#" starts a comment that
// runs to the end of the line.

#include "nestad/parse.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nestad/analytic.hpp"
#include "nestad/errors.hpp"

namespace nestad {
namespace {

enum class Tok {
    End, Ident, Number, KwDef, KwEval, KwAt,
    Plus, Minus, Star, Slash, Caret, LParen, RParen, Equals, Comma, Semi,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    double number = 0.0;
    SourceLoc loc{};
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_space_and_comments();
        Token t;
        t.loc = {line_, col_};
        if (pos_ >= src_.size()) return t;

        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return lex_number(t);
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return lex_ident(t);

        advance();
        switch (c) {
            case '+': t.kind = Tok::Plus; return t;
            case '-': t.kind = Tok::Minus; return t;
            case '*': t.kind = Tok::Star; return t;
            case '/': t.kind = Tok::Slash; return t;
            case '^': t.kind = Tok::Caret; return t;
            case '(': t.kind = Tok::LParen; return t;
            case ')': t.kind = Tok::RParen; return t;
            case '=': t.kind = Tok::Equals; return t;
            case ',': t.kind = Tok::Comma; return t;
            case ';': t.kind = Tok::Semi; return t;
        }
        throw SyntaxError(t.loc, std::string("unexpected character '") + c + "'");
    }

private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    Token lex_number(Token t) {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            advance();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            advance();
            if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
                throw SyntaxError({line_, col_}, "expected digits after decimal point");
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                advance();
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            advance();
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) advance();
            if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
                throw SyntaxError({line_, col_}, "malformed exponent in number literal");
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                advance();
        }
        t.kind = Tok::Number;
        t.text = std::string(src_.substr(start, pos_ - start));
        try {
            t.number = std::stod(t.text);
        } catch (const std::out_of_range&) {
            throw SyntaxError(t.loc, "number literal out of range");
        }
        return t;
    }

    Token lex_ident(Token t) {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            advance();
        t.text = std::string(src_.substr(start, pos_ - start));
        if (t.text == "def") t.kind = Tok::KwDef;
        else if (t.text == "eval") t.kind = Tok::KwEval;
        else if (t.text == "at") t.kind = Tok::KwAt;
        else t.kind = Tok::Ident;
        return t;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

bool is_reserved(const std::string& name) {
    return name == "pi" || name == "e" || name == "D";
}

class Parser {
public:
    explicit Parser(std::string_view src) : lexer_(src) { current_ = lexer_.next(); }

    Program parse_program() {
        Program prog;
        while (current_.kind == Tok::KwDef) prog.defs.push_back(parse_def());
        expect(Tok::KwEval, "expected 'eval'");
        prog.query = parse_expr();
        expect(Tok::KwAt, "expected 'at'");
        prog.bindings.push_back(parse_binding());
        while (accept(Tok::Comma)) prog.bindings.push_back(parse_binding());
        expect(Tok::Semi, "expected ';'");
        if (current_.kind != Tok::End)
            throw SyntaxError(current_.loc, "expected end of input after query");
        return prog;
    }

    ExprPtr parse_bare_expr() {
        ExprPtr e = parse_expr();
        if (current_.kind != Tok::End)
            throw SyntaxError(current_.loc, "expected end of input");
        return e;
    }

private:
    Token take() {
        Token t = current_;
        current_ = lexer_.next();
        return t;
    }

    bool accept(Tok kind) {
        if (current_.kind != kind) return false;
        take();
        return true;
    }

    Token expect(Tok kind, const std::string& msg) {
        if (current_.kind != kind) throw SyntaxError(current_.loc, msg);
        return take();
    }

    FunctionDef parse_def() {
        FunctionDef def;
        def.loc = current_.loc;
        expect(Tok::KwDef, "expected 'def'");
        def.name = expect(Tok::Ident, "expected function name").text;
        expect(Tok::LParen, "expected '(' after function name");
        def.param = expect(Tok::Ident, "expected parameter name").text;
        expect(Tok::RParen, "expected ')' after parameter name");
        expect(Tok::Equals, "expected '=' in definition");
        def.body = parse_expr();
        expect(Tok::Semi, "expected ';' after definition");
        return def;
    }

    Binding parse_binding() {
        Binding b;
        b.loc = current_.loc;
        b.name = expect(Tok::Ident, "expected variable name in binding").text;
        expect(Tok::Equals, "expected '=' in binding");
        double sign = 1.0;
        if (accept(Tok::Minus)) sign = -1.0;
        if (current_.kind == Tok::Number) {
            b.value = sign * take().number;
        } else if (current_.kind == Tok::Ident && current_.text == "pi") {
            take();
            b.value = sign * std::numbers::pi;
        } else if (current_.kind == Tok::Ident && current_.text == "e") {
            take();
            b.value = sign * std::numbers::e;
        } else {
            throw SyntaxError(current_.loc, "expected number in binding");
        }
        return b;
    }

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_term();
        while (current_.kind == Tok::Plus || current_.kind == Tok::Minus) {
            const Token op = take();
            ExprPtr rhs = parse_term();
            lhs = expr_binary(op.kind == Tok::Plus ? Expr::Kind::Add : Expr::Kind::Sub,
                              std::move(lhs), std::move(rhs), op.loc);
        }
        return lhs;
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_unary();
        while (current_.kind == Tok::Star || current_.kind == Tok::Slash) {
            const Token op = take();
            ExprPtr rhs = parse_unary();
            lhs = expr_binary(op.kind == Tok::Star ? Expr::Kind::Mul : Expr::Kind::Div,
                              std::move(lhs), std::move(rhs), op.loc);
        }
        return lhs;
    }

    ExprPtr parse_unary() {
        if (current_.kind == Tok::Minus) {
            const Token op = take();
            return expr_neg(parse_unary(), op.loc);
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        if (current_.kind != Tok::Caret) return base;
        const Token op = take();
        ExprPtr exponent = parse_unary();  // allows x^-2 and keeps ^ right-assoc
        if (auto n = integer_literal(*exponent))
            return expr_int_pow(std::move(base), *n, op.loc);
        return expr_binary(Expr::Kind::Pow, std::move(base), std::move(exponent), op.loc);
    }

    // Literal integer exponents (possibly negated) fold to IntPow, so that
    // x^2 stays defined for negative bases.
    static std::optional<long> integer_literal(const Expr& e) {
        if (e.kind == Expr::Kind::Neg) {
            if (auto n = integer_literal(*e.lhs)) return -*n;
            return std::nullopt;
        }
        if (e.kind != Expr::Kind::Constant) return std::nullopt;
        const double v = e.number;
        if (!(std::floor(v) == v) || std::abs(v) > 2147483647.0) return std::nullopt;
        return static_cast<long>(v);
    }

    ExprPtr parse_atom() {
        const Token t = current_;
        if (accept(Tok::Number)) return expr_constant(t.number, t.loc);
        if (accept(Tok::LParen)) {
            ExprPtr inner = parse_expr();
            expect(Tok::RParen, "expected ')'");
            return inner;
        }
        if (current_.kind == Tok::Ident) {
            const Token ident = take();
            if (ident.text == "pi") return expr_constant(std::numbers::pi, ident.loc);
            if (ident.text == "e") return expr_constant(std::numbers::e, ident.loc);
            if (ident.text == "D") {
                expect(Tok::LParen, "expected '(' after 'D'");
                const Token fn = expect(Tok::Ident, "expected function name in D(...)");
                expect(Tok::RParen, "expected ')' after function name");
                expect(Tok::LParen, "expected '(' to open the argument of D");
                ExprPtr arg = parse_expr();
                expect(Tok::RParen, "expected ')'");
                return expr_deriv_call(fn.text, std::move(arg), ident.loc);
            }
            if (accept(Tok::LParen)) {
                ExprPtr arg = parse_expr();
                expect(Tok::RParen, "expected ')'");
                return expr_call(ident.text, std::move(arg), ident.loc);
            }
            return expr_variable(ident.text, ident.loc);
        }
        throw SyntaxError(t.loc, "expected an expression");
    }

    Lexer lexer_;
    Token current_;
};

// --- validation ------------------------------------------------------------

void check_def_body(const Expr& e, const FunctionDef& def,
                    const std::vector<FunctionDef>& defs, std::size_t own_index) {
    switch (e.kind) {
        case Expr::Kind::Constant:
            return;
        case Expr::Kind::Variable:
            if (e.name != def.param) throw UndefinedVariableError(e.loc, e.name);
            return;
        case Expr::Kind::Neg:
        case Expr::Kind::IntPow:
            check_def_body(*e.lhs, def, defs, own_index);
            return;
        case Expr::Kind::Add:
        case Expr::Kind::Sub:
        case Expr::Kind::Mul:
        case Expr::Kind::Div:
        case Expr::Kind::Pow:
            check_def_body(*e.lhs, def, defs, own_index);
            check_def_body(*e.rhs, def, defs, own_index);
            return;
        case Expr::Kind::Call: {
            if (e.name == def.name) throw RecursiveDefinitionError(e.loc, e.name);
            bool earlier = false;
            for (std::size_t i = 0; i < own_index; ++i)
                if (defs[i].name == e.name) earlier = true;
            if (!earlier && find_function(e.name) == nullptr)
                throw UndefinedFunctionError(e.loc, e.name);
            check_def_body(*e.lhs, def, defs, own_index);
            return;
        }
        case Expr::Kind::DerivCall:
            // Only one nesting level is supported.
            throw ParseError(e.loc,
                             "the nested-derivative operator D is not allowed "
                             "inside a function definition");
    }
}

void check_query(const Expr& e, const Program& prog,
                 const std::set<std::string>& bound) {
    switch (e.kind) {
        case Expr::Kind::Constant:
            return;
        case Expr::Kind::Variable:
            if (!bound.count(e.name)) throw UndefinedVariableError(e.loc, e.name);
            return;
        case Expr::Kind::Neg:
        case Expr::Kind::IntPow:
            check_query(*e.lhs, prog, bound);
            return;
        case Expr::Kind::Add:
        case Expr::Kind::Sub:
        case Expr::Kind::Mul:
        case Expr::Kind::Div:
        case Expr::Kind::Pow:
            check_query(*e.lhs, prog, bound);
            check_query(*e.rhs, prog, bound);
            return;
        case Expr::Kind::Call:
            if (prog.find_def(e.name) == nullptr && find_function(e.name) == nullptr)
                throw UndefinedFunctionError(e.loc, e.name);
            check_query(*e.lhs, prog, bound);
            return;
        case Expr::Kind::DerivCall:
            if (prog.find_def(e.name) == nullptr) {
                if (find_function(e.name) != nullptr)
                    throw ParseError(e.loc, "D(" + e.name + ") needs a user-defined "
                                            "function; wrap the built-in in a definition");
                throw UndefinedFunctionError(e.loc, e.name);
            }
            check_query(*e.lhs, prog, bound);
            return;
    }
}

void validate(const Program& prog) {
    for (std::size_t i = 0; i < prog.defs.size(); ++i) {
        const FunctionDef& def = prog.defs[i];
        if (is_reserved(def.name))
            throw ParseError(def.loc, "'" + def.name + "' is reserved");
        if (find_function(def.name) != nullptr)
            throw ParseError(def.loc, "'" + def.name + "' is a built-in function");
        for (std::size_t j = 0; j < i; ++j)
            if (prog.defs[j].name == def.name)
                throw ParseError(def.loc, "duplicate definition of '" + def.name + "'");
        if (is_reserved(def.param))
            throw ParseError(def.loc, "parameter '" + def.param + "' is reserved");
        check_def_body(*def.body, def, prog.defs, i);
    }

    std::set<std::string> bound;
    for (std::size_t i = 0; i < prog.bindings.size(); ++i) {
        const Binding& b = prog.bindings[i];
        if (is_reserved(b.name))
            throw ParseError(b.loc, "'" + b.name + "' is reserved");
        if (!bound.insert(b.name).second)
            throw ParseError(b.loc, "duplicate binding for '" + b.name + "'");
    }
    check_query(*prog.query, prog, bound);
}

}  // namespace

Program parse(std::string_view source) {
    Parser parser(source);
    Program prog = parser.parse_program();
    validate(prog);
    return prog;
}

ExprPtr parse_expression(std::string_view source) {
    Parser parser(source);
    return parser.parse_bare_expr();
}

}  // namespace nestad
