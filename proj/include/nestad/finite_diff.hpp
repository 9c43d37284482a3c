#pragma once

/// Central finite differences, the numeric side of the verification oracle.
/// Step sizes follow the usual truncation/rounding balance: eps^(1/3) scaled
/// by the point for first derivatives, eps^(1/4) for second-order stencils.

#include <cmath>
#include <limits>

#include "nestad/errors.hpp"

namespace nestad {

struct FDConfig {
    double step_first = 0.0;   // 0 selects cbrt(eps) * max(1, |x|)
    double step_second = 0.0;  // 0 selects eps^(1/4) * max(1, |x|)
    double rel_tol = 1e-5;
    double abs_tol = 1e-6;

    double first_step(double x) const {
        if (step_first > 0.0) return step_first;
        constexpr double eps = std::numeric_limits<double>::epsilon();
        return std::cbrt(eps) * std::max(1.0, std::abs(x));
    }
    double second_step(double x) const {
        if (step_second > 0.0) return step_second;
        constexpr double eps = std::numeric_limits<double>::epsilon();
        return std::pow(eps, 0.25) * std::max(1.0, std::abs(x));
    }
};

// (f(x+h) - f(x-h)) / 2h.
template <class F>
double fd_first(F&& f, double x, const FDConfig& cfg = {}) {
    const double h = cfg.first_step(x);
    const double hi = f(x + h);
    const double lo = f(x - h);
    if (!std::isfinite(hi) || !std::isfinite(lo)) throw NonFiniteError();
    return (hi - lo) / (2.0 * h);
}

// Mixed second partial from the 4-point stencil.
template <class F2>
double fd_mixed(F2&& f2, double x, double y, const FDConfig& cfg = {}) {
    const double h = cfg.second_step(x);
    const double k = cfg.second_step(y);
    const double pp = f2(x + h, y + k);
    const double pm = f2(x + h, y - k);
    const double mp = f2(x - h, y + k);
    const double mm = f2(x - h, y - k);
    if (!std::isfinite(pp) || !std::isfinite(pm) || !std::isfinite(mp) ||
        !std::isfinite(mm))
        throw NonFiniteError();
    return (pp - pm - mp + mm) / (4.0 * h * k);
}

}  // namespace nestad
