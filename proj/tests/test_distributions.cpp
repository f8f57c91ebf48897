#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "anovatk/distributions.hpp"
#include "oracles.hpp"

using namespace anovatk;

TEST_CASE("F density: closed-form anchor points") {
  CHECK(f_pdf(0.0, FDist(2, 27)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f_pdf(0.0, FDist(1, 10)) == std::numeric_limits<double>::infinity());
  CHECK(f_pdf(0.0, FDist(5, 10)) == 0.0);

  // df1 = 1 density evaluated straight from its formula.
  const int nu = 10;
  const double x = 1.0;
  const double log_b = std::lgamma(0.5) + std::lgamma(0.5 * nu) - std::lgamma(0.5 * (nu + 1));
  const double expected =
      std::exp(-log_b) * std::pow(nu * x, -0.5) * std::pow(1.0 + x / nu, -0.5 * (nu + 1));
  CHECK(f_pdf(x, FDist(1, nu)) == doctest::Approx(expected).epsilon(1e-12));

  CHECK_THROWS_AS(f_pdf(-0.5, FDist(2, 5)), std::domain_error);
}

TEST_CASE("F density matches the numerical derivative of the CDF") {
  const FDist d(3, 12);
  const double x = 2.0;
  const double h = 1e-5;
  const double derivative = (f_cdf(x + h, d) - f_cdf(x - h, d)) / (2.0 * h);
  CHECK(f_pdf(x, d) == doctest::Approx(derivative).epsilon(1e-6));
}

TEST_CASE("F upper tail reproduces the published p values") {
  CHECK(f_upper_tail(3.39789, FDist(2, 27)) == doctest::Approx(0.04828).epsilon(1e-4 / 0.04828));
  CHECK(f_upper_tail(5.434026, FDist(1, 8)) ==
        doctest::Approx(0.04807907).epsilon(1e-5 / 0.04807907));
  CHECK(f_upper_tail(0.0, FDist(4, 9)) == 1.0);
  CHECK_THROWS_AS(f_upper_tail(-1.0, FDist(1, 1)), std::domain_error);
}

TEST_CASE("F critical value inverts the upper tail") {
  CHECK(f_critical(0.04828, FDist(2, 27)) == doctest::Approx(3.39789).epsilon(1e-3 / 3.39789));

  for (double alpha : {0.005, 0.01, 0.025, 0.05, 0.1, 0.25, 0.5}) {
    for (int df1 : {1, 2, 7}) {
      for (int df2 : {1, 5, 30, 200}) {
        const FDist d(df1, df2);
        CHECK(f_upper_tail(f_critical(alpha, d), d) == doctest::Approx(alpha).epsilon(1e-9));
      }
    }
  }

  CHECK_THROWS_AS(f_critical(0.0, FDist(1, 1)), std::domain_error);
  CHECK_THROWS_AS(f_critical(1.0, FDist(1, 1)), std::domain_error);
}

TEST_CASE("F critical value agrees with an independent quadrature route") {
  const double from_quadrature = oracles::f_one_nu_critical_quadrature(0.05, 18);
  CHECK(f_critical(0.05, FDist(1, 18)) == doctest::Approx(from_quadrature).epsilon(1e-7));
}

TEST_CASE("t two-sided p values") {
  CHECK(t_two_sided_p(2.56668, TDist(7)) == doctest::Approx(0.037188).epsilon(1e-5 / 0.037188));
  CHECK(t_two_sided_p(2.33110, TDist(8)) == doctest::Approx(0.048079).epsilon(1e-5 / 0.048079));
  CHECK(t_two_sided_p(0.0, TDist(3)) == 1.0);
  CHECK(t_upper_tail(0.0, TDist(3)) == doctest::Approx(0.5));
  CHECK(t_upper_tail(2.0, TDist(9)) + t_upper_tail(-2.0, TDist(9)) == doctest::Approx(1.0));
}

TEST_CASE("t squared is F(1, nu)") {
  for (double x : {0.5, 1.0, 2.0, 3.0}) {
    for (int nu = 1; nu <= 50; ++nu) {
      const double lhs = t_two_sided_p(x, TDist(nu));
      const double rhs = f_upper_tail(x * x, FDist(1, nu));
      CHECK(std::fabs(lhs - rhs) < 1e-10);
    }
  }
}

TEST_CASE("two-group studentized range density") {
  CHECK_THROWS_AS(q_pdf_two_groups(-1.0, 5), std::domain_error);

  // Value at zero from the formula itself.
  const int nu = 10;
  const double expected0 = std::exp(0.5 * std::log(2.0) + 0.5 * nu * std::log(nu) +
                                    std::lgamma(0.5 * (nu + 1)) - 0.5 * std::log(M_PI) -
                                    std::lgamma(0.5 * nu) - 0.5 * (nu + 1) * std::log(nu));
  const double at0 = q_pdf_two_groups(0.0, nu);
  CHECK(at0 > 0.0);
  CHECK(at0 == doctest::Approx(expected0).epsilon(1e-12));

  // Change of variables x = q^2/2 recovers the F(1, nu) density.
  for (double x : {0.25, 1.0, 2.5, 7.0}) {
    const double q = std::sqrt(2.0 * x);
    const double lhs = q_pdf_two_groups(q, nu) / q;  // (1/sqrt(2x)) f_Q(sqrt(2x))
    CHECK(lhs == doctest::Approx(f_pdf(x, FDist(1, nu))).epsilon(1e-12));
  }

  // Normalization.
  const double integral =
      oracles::simpson([](double q) { return q_pdf_two_groups(q, 5); }, 0.0, 400.0, 400000);
  CHECK(integral == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("studentized range CDF: basic shape") {
  CHECK(q_cdf(0.0, QDist(3, 10)) == 0.0);
  CHECK_THROWS_AS(q_cdf(-0.1, QDist(3, 10)), std::domain_error);
  CHECK_THROWS_AS(QDist(1, 10), std::domain_error);
  CHECK_THROWS_AS(QDist(3, 0), std::domain_error);

  for (int k : {2, 4, 9}) {
    for (int nu : {1, 6, 40}) {
      double prev = 0.0;
      for (double q = 0.0; q <= 12.0; q += 0.4) {
        const double c = q_cdf(q, QDist(k, nu));
        CHECK(c >= prev - 1e-12);
        CHECK(c >= 0.0);
        CHECK(c <= 1.0);
        prev = c;
      }
    }
  }
}

TEST_CASE("studentized range CDF agrees with the two-group closed form") {
  double worst = 0.0;
  for (int nu : {1, 2, 5, 18, 27, 120, 1000}) {
    for (double q : {0.1, 0.7, 1.5, 2.8, 4.5, 8.0, 30.0, 150.0}) {
      const double via_range = q_cdf(q, QDist(2, nu));
      const double via_beta = 1.0 - f_upper_tail(q * q / 2.0, FDist(1, nu));
      worst = std::max(worst, std::fabs(via_range - via_beta));
    }
  }
  CHECK(worst < 1e-6);      // required accuracy
  CHECK(worst < 5e-9);      // what the quadrature actually delivers
}

TEST_CASE("studentized range CDF is converged at the production panel counts") {
  double worst = 0.0;
  for (int k : {2, 3, 10, 50}) {
    for (int nu : {1, 4, 27, 300, 1000000}) {
      for (double q : {0.6, 2.0, 3.5, 5.5, 11.0}) {
        const double base = q_cdf(q, QDist(k, nu));
        const double fine = detail::q_cdf_refined(q, QDist(k, nu), 3);
        worst = std::max(worst, std::fabs(base - fine));
      }
    }
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("studentized range CDF reproduces the adjusted p of the worked example") {
  const double q = 30.8382946 / std::sqrt(771.304 / 10.0);
  const double p_adj = 1.0 - q_cdf(q, QDist(3, 27));
  CHECK(p_adj == doctest::Approx(0.0496248072).epsilon(5e-4 / 0.0496248072));
}

TEST_CASE("studentized range critical values") {
  for (double alpha : {0.01, 0.05, 0.25}) {
    for (int nu : {1, 7, 60}) {
      const double q = q_critical(alpha, QDist(2, nu));
      CHECK(q * q == doctest::Approx(2.0 * f_critical(alpha, FDist(1, nu))).epsilon(1e-7));
      CHECK(q_cdf(q, QDist(2, nu)) == doctest::Approx(1.0 - alpha).epsilon(1e-8));
    }
  }
  for (double alpha : {0.005, 0.1}) {
    for (int k : {3, 12}) {
      const QDist d(k, 35);
      CHECK(q_cdf(q_critical(alpha, d), d) == doctest::Approx(1.0 - alpha).epsilon(1e-8));
    }
  }
  CHECK_THROWS_AS(q_critical(0.0, QDist(2, 5)), std::domain_error);
}

TEST_CASE("studentized range critical value sits where Monte Carlo says") {
  const double q = q_critical(0.05, QDist(3, 10));
  const auto mc = oracles::monte_carlo_q_coverage(q, 3, 10, 1000000, 20260810);
  CHECK(std::fabs(mc.coverage - 0.95) <= 3.0 * mc.standard_error);
}

TEST_CASE("lemma identity check") {
  CHECK_THROWS_AS(verify_lemma1({}, {1, 2}), std::domain_error);
  CHECK_THROWS_AS(verify_lemma1({0.05}, {}), std::domain_error);

  const Lemma1Result single = verify_lemma1({0.05}, {18});
  CHECK(single.max_relative_deviation < 1e-7);
  CHECK(q_critical(0.05, QDist(2, 18)) * q_critical(0.05, QDist(2, 18)) / 2.0 ==
        doctest::Approx(f_critical(0.05, FDist(1, 18))).epsilon(1e-7));

  std::vector<int> nus;
  for (int nu = 1; nu <= 20; ++nu) nus.push_back(nu);
  const Lemma1Result grid = verify_lemma1({0.01, 0.05, 0.25}, nus);
  CHECK(grid.max_relative_deviation < 1e-5);
  // The degenerate one-cell grid reproduces the pointwise value.
  const Lemma1Result cell = verify_lemma1({0.05}, {7});
  const double q = q_critical(0.05, QDist(2, 7));
  const double f2 = 2.0 * f_critical(0.05, FDist(1, 7));
  CHECK(cell.max_relative_deviation == doctest::Approx(std::fabs(q * q - f2) / f2));
}
