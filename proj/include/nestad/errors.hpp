#pragma once

#include <stdexcept>
#include <string>

namespace nestad {

// Position inside an input program, 1-based. line == 0 means "unknown".
struct SourceLoc {
    int line = 0;
    int col = 0;

    bool known() const { return line > 0; }
    std::string to_string() const {
        return std::to_string(line) + ":" + std::to_string(col);
    }
};

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Arithmetic failures raised while evaluating; the evaluator attaches the
// location of the offending node as the error unwinds.
class ArithmeticError : public Error {
public:
    explicit ArithmeticError(const std::string& msg) : Error(msg) {}

    const SourceLoc& location() const { return loc_; }
    void ensure_location(SourceLoc loc) {
        if (!loc_.known()) loc_ = loc;
    }
    std::string message_with_location() const {
        if (!loc_.known()) return what();
        return loc_.to_string() + ": " + what();
    }

private:
    SourceLoc loc_{};
};

// Inverse or division requested on an element whose primal value is exactly
// zero; such elements have no inverse.
class ZeroPrimalError : public ArithmeticError {
public:
    ZeroPrimalError() : ArithmeticError("zero primal value has no inverse") {}
    explicit ZeroPrimalError(const std::string& msg) : ArithmeticError(msg) {}
};

// Argument outside the real-analytic domain of an elementary function.
class DomainError : public ArithmeticError {
public:
    DomainError(const std::string& fn, double arg)
        : ArithmeticError("argument " + std::to_string(arg) +
                          " outside the domain of " + fn) {}
};

// A finite-difference sample came back NaN or infinite.
class NonFiniteError : public Error {
public:
    NonFiniteError() : Error("non-finite sample in finite-difference stencil") {}
};

class UnknownFunctionError : public Error {
public:
    explicit UnknownFunctionError(const std::string& name)
        : Error("unknown function '" + name + "'") {}
};

class UnknownVariableError : public Error {
public:
    explicit UnknownVariableError(const std::string& name)
        : Error("unknown variable '" + name + "'") {}
};

// Errors reported while parsing or validating a program. All carry the
// location that triggered them.
class ParseError : public Error {
public:
    ParseError(SourceLoc loc, const std::string& msg)
        : Error(loc.to_string() + ": " + msg), loc_(loc) {}

    const SourceLoc& location() const { return loc_; }

private:
    SourceLoc loc_;
};

class SyntaxError : public ParseError {
public:
    using ParseError::ParseError;
};

class UndefinedFunctionError : public ParseError {
public:
    UndefinedFunctionError(SourceLoc loc, const std::string& name)
        : ParseError(loc, "undefined function '" + name + "'") {}
};

class UndefinedVariableError : public ParseError {
public:
    UndefinedVariableError(SourceLoc loc, const std::string& name)
        : ParseError(loc, "undefined variable '" + name + "'") {}
};

class RecursiveDefinitionError : public ParseError {
public:
    RecursiveDefinitionError(SourceLoc loc, const std::string& name)
        : ParseError(loc, "recursive definition of '" + name + "'") {}
};

}  // namespace nestad
