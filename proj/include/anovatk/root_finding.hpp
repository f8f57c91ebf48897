#pragma once

#include <functional>

namespace anovatk::detail {

/// Solves f(x) = 0 for a continuous monotone f on a bracket [lo, hi] with
/// f(lo) and f(hi) of opposite sign, by secant steps guarded by bisection.
/// Converges to relative tolerance rel_tol in the argument.
double solve_bracketed(const std::function<double(double)>& f, double lo, double hi,
                       double f_lo, double f_hi, double rel_tol = 1e-12);

/// Expands [lo, hi] upward (hi *= growth) until f changes sign, then solves.
/// f must be monotone with f(lo) and the eventual f(hi) of opposite sign.
double solve_increasing_bracket(const std::function<double(double)>& f, double lo, double hi,
                                double growth = 4.0, double rel_tol = 1e-12);

}  // namespace anovatk::detail
