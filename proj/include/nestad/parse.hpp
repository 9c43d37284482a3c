#pragma once

#include <string_view>

#include "nestad/expr.hpp"

namespace nestad {

// Parses and validates a full program. Throws SyntaxError,
// UndefinedFunctionError, UndefinedVariableError or RecursiveDefinitionError.
Program parse(std::string_view source);

// Convenience for tests and tools: parses a bare expression with the given
// variable names in scope (no defs, no bindings attached).
ExprPtr parse_expression(std::string_view source);

}  // namespace nestad
