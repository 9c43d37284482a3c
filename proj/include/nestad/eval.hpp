#pragma once

/// Forward-mode evaluation of a program: one seeded pass per bound variable.
/// Each D(g)(h) node evaluates h in the outer pass, pushes the resulting
/// dual, runs g's body over nested duals and splices the derivative part
/// back into the outer computation.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nestad/expr.hpp"
#include "nestad/finite_diff.hpp"

namespace nestad {

// One record per D(g)(h) evaluation. The composite derivative is taken with
// respect to the pass's active variable, so multi-variable queries produce
// one record per variable pass.
struct NestedDiagnostic {
    std::string fn;
    std::string var;                   // active variable of the pass
    double value = 0.0;                // g at the pushed point
    double nested_derivative = 0.0;    // dg/dy at the pushed point
    double composite_derivative = 0.0; // d/dvar of the nested derivative
};

struct DerivativeCheck {
    std::string var;
    double ad = 0.0;
    double symbolic = 0.0;
    double finite_diff = 0.0;
    double symbolic_delta = 0.0;
    double fd_delta = 0.0;
    bool ok = true;
};

struct NestedCheck {
    std::string fn;
    std::string var;
    double nested_symbolic = 0.0;
    double nested_fd = 0.0;
    double composite_symbolic = 0.0;
    double composite_fd = 0.0;
    double nested_symbolic_delta = 0.0;
    double composite_symbolic_delta = 0.0;
    double composite_fd_delta = 0.0;
    bool ok = true;
};

struct CheckReport {
    double value_reference = 0.0;
    double value_delta = 0.0;
    std::vector<DerivativeCheck> derivatives;
    std::vector<NestedCheck> nested;
    bool ok = true;
};

struct EvalReport {
    double value = 0.0;
    std::vector<std::pair<std::string, double>> derivatives;  // binding order
    std::vector<NestedDiagnostic> nested;
    std::optional<CheckReport> check;
};

EvalReport evaluate(const Program& prog);

struct CheckOptions {
    FDConfig fd{};
    double sym_rel_tol = 1e-9;    // closed-form oracle agreement
    double mixed_rel_tol = 1e-3;  // mixed finite differences, second order
};

// Cross-validates an evaluation against the symbolic and finite-difference
// oracles. Only reads prog and report; the caller decides what to do with a
// failed check.
CheckReport run_check(const Program& prog, const EvalReport& report,
                      const CheckOptions& options = {});

}  // namespace nestad
