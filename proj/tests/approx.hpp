#pragma once

#include <doctest.h>

#include <cmath>

// Approx with pure relative semantics: |lhs - rhs| < tol * max(|lhs|, |rhs|).
inline doctest::Approx approx_rel(double expected, double tol) {
  return doctest::Approx(expected).epsilon(tol).scale(0.0);
}

inline bool within_abs(double actual, double expected, double tol) {
  return std::fabs(actual - expected) <= tol;
}
