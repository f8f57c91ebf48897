#pragma once

#include <vector>

namespace anovatk {

/// Fisher-Snedecor distribution with integer degrees of freedom.
struct FDist {
  int df1;
  int df2;
  FDist(int df1_, int df2_);
};

/// Student t distribution with integer degrees of freedom.
struct TDist {
  int nu;
  explicit TDist(int nu_);
};

/// Studentized range distribution: range of k standard normals divided by
/// an independent chi estimate of scale with nu degrees of freedom.
struct QDist {
  int k;
  int nu;
  QDist(int k_, int nu_);
};

double f_pdf(double x, const FDist& d);
double f_cdf(double x, const FDist& d);
double f_upper_tail(double x, const FDist& d);
double f_critical(double alpha, const FDist& d);

double t_upper_tail(double x, const TDist& d);
double t_two_sided_p(double x, const TDist& d);

/// Closed-form density of the studentized range for exactly two groups.
double q_pdf_two_groups(double q, int nu);

double q_cdf(double q, const QDist& d);
double q_critical(double alpha, const QDist& d);

struct Lemma1Result {
  double max_relative_deviation = 0.0;
  double worst_alpha = 0.0;
  int worst_nu = 0;
};

/// Max relative deviation of Q^2(alpha, 2, nu) from 2 F_crit(alpha, 1, nu)
/// over the given grid. The two sides are computed by unrelated routes
/// (range-distribution quadrature vs incomplete beta), so a small deviation
/// is evidence both are right.
Lemma1Result verify_lemma1(const std::vector<double>& alphas, const std::vector<int>& nus);

namespace detail {
/// q_cdf with all quadrature panel counts multiplied by `refine`;
/// refine == 1 is the production path. Used by convergence tests.
double q_cdf_refined(double q, const QDist& d, int refine);
}  // namespace detail

}  // namespace anovatk
