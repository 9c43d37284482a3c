#pragma once

/// Exact symbolic differentiation over the expression AST, plus a plain-real
/// evaluator. Together they form the closed-form side of the verification
/// oracle: derivative trees are built by the textbook rules and evaluated as
/// ordinary doubles, with no dual arithmetic anywhere on this path.

#include <string>
#include <utility>
#include <vector>

#include "nestad/expr.hpp"

namespace nestad {

using RealEnv = std::vector<std::pair<std::string, double>>;

// Derivative of e with respect to var. D-operator nodes are resolved by
// differentiating the named definition symbolically, so the result tree is
// free of DerivCall nodes. Throws UnknownFunctionError / UnknownVariableError
// for names that resolve nowhere.
ExprPtr sym_diff(const ExprPtr& e, const std::string& var,
                 const std::vector<FunctionDef>& defs);

// Replaces every occurrence of var in e by replacement.
ExprPtr substitute(const ExprPtr& e, const std::string& var,
                   const ExprPtr& replacement);

// Plain-real evaluation. DerivCall(g, h) evaluates the symbolic derivative
// of g at the real value of h.
double eval_real(const ExprPtr& e, const RealEnv& env,
                 const std::vector<FunctionDef>& defs);

}  // namespace nestad
