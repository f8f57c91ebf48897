#include "anovatk/root_finding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "anovatk/errors.hpp"

namespace anovatk::detail {

// Brent's method: inverse quadratic interpolation and secant steps with a
// bisection safeguard, keeping the root bracketed throughout.
double solve_bracketed(const std::function<double(double)>& f, double lo, double hi,
                       double f_lo, double f_hi, double rel_tol) {
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw numeric_error("solve_bracketed: endpoints do not bracket a root");
  }
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  double a = lo, b = hi, c = hi;
  double fa = f_lo, fb = f_hi, fc = f_hi;
  double d = 0.0, e = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      e = d = b - a;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * kEps * std::fabs(b) + 0.5 * rel_tol * std::max(std::fabs(b), 1e-6);
    const double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || fb == 0.0) return b;
    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      const double min1 = 3.0 * xm * q - std::fabs(tol1 * q);
      const double min2 = std::fabs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::fabs(d) > tol1 ? d : (xm >= 0.0 ? tol1 : -tol1);
    fb = f(b);
  }
  return b;
}

double solve_increasing_bracket(const std::function<double(double)>& f, double lo, double hi,
                                double growth, double rel_tol) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  int expansions = 0;
  while ((f_lo > 0.0) == (f_hi > 0.0) && f_lo != 0.0 && f_hi != 0.0) {
    if (++expansions > 80) {
      throw numeric_error("solve_increasing_bracket: no sign change found");
    }
    lo = hi;
    f_lo = f_hi;
    hi *= growth;
    f_hi = f(hi);
  }
  return solve_bracketed(f, lo, hi, f_lo, f_hi, rel_tol);
}

}  // namespace anovatk::detail
