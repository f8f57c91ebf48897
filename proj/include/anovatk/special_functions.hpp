#pragma once

#include <cstddef>
#include <vector>

namespace anovatk::special {

double log_beta(double a, double b);

/// Regularized incomplete beta I_x(a, b), evaluated by the continued
/// fraction of Lentz's method with the usual symmetry split.
double regularized_incomplete_beta(double x, double a, double b);

/// Regularized lower/upper incomplete gamma P(a, x), Q(a, x).
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

double normal_pdf(double z);
double normal_cdf(double z);

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendreRule& gauss_legendre(int n);

/// x^n for small nonnegative integer n (exponentiation by squaring).
inline double powi(double x, unsigned n) {
  double r = 1.0;
  while (n != 0) {
    if (n & 1u) r *= x;
    x *= x;
    n >>= 1;
  }
  return r;
}

}  // namespace anovatk::special
