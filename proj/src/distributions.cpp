#include "anovatk/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "anovatk/errors.hpp"
#include "anovatk/parallel.hpp"
#include "anovatk/root_finding.hpp"
#include "anovatk/special_functions.hpp"

namespace anovatk {

namespace {

using special::gauss_legendre;
using special::normal_cdf;
using special::normal_pdf;
using special::powi;
using special::regularized_gamma_q;
using special::regularized_incomplete_beta;

constexpr int kMaxGroups = 200;

// Inner integration grid for the normal-range CDF: z in [-8, 8], beyond
// which the truncated mass is below k * 6.3e-16. Nodes are fixed, so
// phi(z) * weight and Phi(z) are precomputed once.
struct RangeRule {
  std::vector<double> z;
  std::vector<double> wphi;
  std::vector<double> cdf;
};

RangeRule make_range_rule(int panels, int order) {
  const auto& gl = gauss_legendre(order);
  RangeRule rule;
  const double lo = -8.0, hi = 8.0;
  const double width = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + p * width;
    const double mid = a + 0.5 * width;
    const double half = 0.5 * width;
    for (int j = 0; j < order; ++j) {
      const double zj = mid + half * gl.nodes[j];
      rule.z.push_back(zj);
      rule.wphi.push_back(half * gl.weights[j] * normal_pdf(zj));
      rule.cdf.push_back(normal_cdf(zj));
    }
  }
  return rule;
}

const RangeRule& range_rule(int refine) {
  static const RangeRule base = make_range_rule(6, 20);
  static const RangeRule fine = make_range_rule(18, 24);
  return refine <= 1 ? base : fine;
}

// CDF of the range of k iid standard normals at w, via
// k * Integral phi(z) [Phi(z) - Phi(z - w)]^(k-1) dz with z the maximum.
double normal_range_cdf(double w, int k, const RangeRule& rule) {
  if (w <= 0.0) return 0.0;
  const unsigned e = static_cast<unsigned>(k - 1);
  double sum = 0.0;
  const std::size_t n = rule.z.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double inner = rule.cdf[j] - normal_cdf(rule.z[j] - w);
    if (inner > 0.0) sum += rule.wphi[j] * powi(inner, e);
  }
  return std::min(1.0, k * sum);
}

// Density of S = sqrt(chi^2_nu / nu) in log form; stable for nu up to ~1e7.
struct ChiScaleDensity {
  double nu;
  double log_norm;  // log 2 + (nu/2) log(nu/2) - nu/2 - lgamma(nu/2)

  explicit ChiScaleDensity(int nu_)
      : nu(nu_),
        log_norm(std::log(2.0) + 0.5 * nu * std::log(0.5 * nu) - 0.5 * nu -
                 std::lgamma(0.5 * nu)) {}

  double operator()(double s) const {
    if (s <= 0.0) return 0.0;
    // log f = log_norm + (nu-1) log s - nu (s^2 - 1)/2, centered at s = 1
    // so the two large terms cancel before exponentiation.
    const double ls = std::log(s);
    return std::exp(log_norm + (nu - 1.0) * ls - 0.5 * nu * (s * s - 1.0));
  }

  double upper_tail(double s) const {
    return regularized_gamma_q(0.5 * nu, 0.5 * nu * s * s);
  }
};

// Support of the chi-scale density outside of which the mass is below
// ~5e-15 per side (sub-gamma tail bounds with exponent 33).
void chi_scale_support(int nu, double* lo, double* hi) {
  const double x = 33.0;
  const double n = nu;
  *hi = std::sqrt((n + 2.0 * std::sqrt(n * x) + 2.0 * x) / n);
  const double lower_sq = (n - 2.0 * std::sqrt(n * x)) / n;
  *lo = lower_sq > 0.0 ? std::sqrt(lower_sq) : 0.0;
}

// Past w_sat the normal-range CDF is within 1e-14 of one for k <= 200,
// so the outer integral reduces to the chi-scale upper tail there.
constexpr double kRangeSaturation = 14.0;

double q_cdf_impl(double q, const QDist& d, int refine) {
  if (q < 0.0) throw std::domain_error("q_cdf: q must be nonnegative");
  if (q == 0.0) return 0.0;
  if (std::isinf(q)) return 1.0;

  const ChiScaleDensity chi(d.nu);
  double s_lo, s_hi;
  chi_scale_support(d.nu, &s_lo, &s_hi);
  const double s_up = std::min(s_hi, kRangeSaturation / q);
  const double tail = chi.upper_tail(s_up);
  if (s_up <= s_lo) return std::min(1.0, tail);

  const RangeRule& rule = range_rule(refine);
  // Panel width resolves both the chi-scale density and the q*s argument
  // of the range CDF (which varies by at most kRangeSaturation overall).
  int panels = std::max(12, static_cast<int>(std::ceil(q * (s_up - s_lo) / 1.5)));
  panels = std::min(panels, 24) * refine;

  const auto& gl = gauss_legendre(refine <= 1 ? 16 : 24);
  const double width = (s_up - s_lo) / panels;
  double integral = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = s_lo + (p + 0.5) * width;
    const double half = 0.5 * width;
    for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
      const double s = mid + half * gl.nodes[j];
      const double density = chi(s);
      if (density == 0.0) continue;
      integral += half * gl.weights[j] * density * normal_range_cdf(q * s, d.k, rule);
    }
  }
  return std::clamp(integral + tail, 0.0, 1.0);
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("alpha must lie strictly between 0 and 1");
  }
}

}  // namespace

FDist::FDist(int df1_, int df2_) : df1(df1_), df2(df2_) {
  if (df1 < 1 || df2 < 1) throw std::domain_error("FDist: degrees of freedom must be >= 1");
}

TDist::TDist(int nu_) : nu(nu_) {
  if (nu < 1) throw std::domain_error("TDist: degrees of freedom must be >= 1");
}

QDist::QDist(int k_, int nu_) : k(k_), nu(nu_) {
  if (k < 2) throw std::domain_error("QDist: group count must be >= 2");
  if (k > kMaxGroups) throw std::domain_error("QDist: group count too large");
  if (nu < 1) throw std::domain_error("QDist: degrees of freedom must be >= 1");
}

double f_pdf(double x, const FDist& d) {
  if (x < 0.0) throw std::domain_error("f_pdf: x must be nonnegative");
  const double a = 0.5 * d.df1;
  const double b = 0.5 * d.df2;
  if (x == 0.0) {
    if (d.df1 == 1) return std::numeric_limits<double>::infinity();
    if (d.df1 == 2) return 1.0;
    return 0.0;
  }
  const double r = static_cast<double>(d.df1) / d.df2;
  const double log_pdf = a * std::log(r) + (a - 1.0) * std::log(x) -
                         (a + b) * std::log1p(r * x) - special::log_beta(a, b);
  return std::exp(log_pdf);
}

double f_cdf(double x, const FDist& d) {
  if (x < 0.0) throw std::domain_error("f_cdf: x must be nonnegative");
  if (x == 0.0) return 0.0;
  const double t = d.df1 * x;
  return regularized_incomplete_beta(t / (t + d.df2), 0.5 * d.df1, 0.5 * d.df2);
}

double f_upper_tail(double x, const FDist& d) {
  if (x < 0.0) throw std::domain_error("f_upper_tail: x must be nonnegative");
  if (x == 0.0) return 1.0;
  // Complementary form evaluated directly so small tails keep full precision.
  const double t = d.df1 * x;
  return regularized_incomplete_beta(d.df2 / (d.df2 + t), 0.5 * d.df2, 0.5 * d.df1);
}

double f_critical(double alpha, const FDist& d) {
  check_alpha(alpha);
  auto fn = [&](double x) { return f_upper_tail(x, d) - alpha; };
  return detail::solve_increasing_bracket(fn, 1e-6, 100.0);
}

double t_upper_tail(double x, const TDist& d) {
  const double half = 0.5 * t_two_sided_p(std::fabs(x), d);
  return x >= 0.0 ? half : 1.0 - half;
}

double t_two_sided_p(double x, const TDist& d) {
  // Identical expression to f_upper_tail(x^2, F(1, nu)), which makes the
  // t^2 = F(1, nu) identity hold to machine precision by construction.
  const double nu = d.nu;
  return regularized_incomplete_beta(nu / (nu + x * x), 0.5 * nu, 0.5);
}

double q_pdf_two_groups(double q, int nu) {
  if (q < 0.0) throw std::domain_error("q_pdf_two_groups: q must be nonnegative");
  if (nu < 1) throw std::domain_error("q_pdf_two_groups: nu must be >= 1");
  const double n = nu;
  const double log_pdf = 0.5 * std::log(2.0) + 0.5 * n * std::log(n) +
                         std::lgamma(0.5 * (n + 1.0)) - 0.5 * std::log(M_PI) -
                         std::lgamma(0.5 * n) -
                         0.5 * (n + 1.0) * std::log(n + 0.5 * q * q);
  return std::exp(log_pdf);
}

double q_cdf(double q, const QDist& d) { return q_cdf_impl(q, d, 1); }

double q_critical(double alpha, const QDist& d) {
  check_alpha(alpha);
  const double target = 1.0 - alpha;
  auto fn = [&](double q) { return q_cdf(q, d) - target; };
  return detail::solve_increasing_bracket(fn, 1e-6, 100.0, 4.0, 1e-11);
}

Lemma1Result verify_lemma1(const std::vector<double>& alphas, const std::vector<int>& nus) {
  if (alphas.empty() || nus.empty()) {
    throw std::domain_error("verify_lemma1: grids must be nonempty");
  }
  for (double a : alphas) check_alpha(a);
  for (int nu : nus) {
    if (nu < 1) throw std::domain_error("verify_lemma1: nu must be >= 1");
  }
  struct Cell {
    double dev;
    double alpha;
    int nu;
  };
  std::vector<Cell> cells(alphas.size() * nus.size());
  detail::parallel_for(cells.size(), [&](std::size_t idx) {
    const double alpha = alphas[idx / nus.size()];
    const int nu = nus[idx % nus.size()];
    const double q = q_critical(alpha, QDist(2, nu));
    const double f2 = 2.0 * f_critical(alpha, FDist(1, nu));
    cells[idx] = {std::fabs(q * q - f2) / f2, alpha, nu};
  });
  Lemma1Result result;
  for (const Cell& c : cells) {
    if (c.dev >= result.max_relative_deviation) {
      result.max_relative_deviation = c.dev;
      result.worst_alpha = c.alpha;
      result.worst_nu = c.nu;
    }
  }
  return result;
}

namespace detail {
double q_cdf_refined(double q, const QDist& d, int refine) {
  return q_cdf_impl(q, d, std::max(1, refine));
}
}  // namespace detail

}  // namespace anovatk
