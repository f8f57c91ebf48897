#include "anovatk/mlr.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "anovatk/distributions.hpp"

namespace anovatk {

namespace {

void validate(const RegressionData& data) {
  if (data.columns.empty()) throw std::domain_error("regression: need at least one predictor");
  if (data.names.size() != data.columns.size()) {
    throw std::domain_error("regression: predictor name count must match column count");
  }
  const std::size_t n = data.response.size();
  const std::size_t k = data.columns.size();
  if (n <= k + 1) throw std::domain_error("regression: need more observations than coefficients");
  for (const auto& col : data.columns) {
    if (col.size() != n) throw std::domain_error("regression: ragged columns");
    for (double v : col) {
      if (!std::isfinite(v)) throw std::domain_error("regression: values must be finite");
    }
  }
  for (double v : data.response) {
    if (!std::isfinite(v)) throw std::domain_error("regression: values must be finite");
  }
}

}  // namespace

RegressionFit ols_fit(const RegressionData& data) {
  validate(data);
  const int n = static_cast<int>(data.response.size());
  const int k = static_cast<int>(data.columns.size());
  const int p = k + 1;

  Eigen::MatrixXd design(n, p);
  design.col(0).setOnes();
  for (int c = 0; c < k; ++c) {
    for (int r = 0; r < n; ++r) design(r, c + 1) = data.columns[c][r];
  }
  Eigen::VectorXd y(n);
  for (int r = 0; r < n; ++r) y(r) = data.response[r];

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-10);
  if (qr.rank() < p) throw std::domain_error("regression: singular design matrix");

  const Eigen::VectorXd beta = qr.solve(y);
  const Eigen::VectorXd residuals = y - design * beta;
  const int dof = n - p;
  const double sse = residuals.squaredNorm();
  const double sigma2 = sse / dof;

  // (X^T X)^{-1} from the pivoted R factor.
  const Eigen::MatrixXd r_inv = qr.matrixR()
                                    .topLeftCorner(p, p)
                                    .triangularView<Eigen::Upper>()
                                    .solve(Eigen::MatrixXd::Identity(p, p));
  const Eigen::MatrixXd xtx_inv =
      qr.colsPermutation() * (r_inv * r_inv.transpose()) * qr.colsPermutation().transpose();

  RegressionFit fit;
  fit.residual_df = dof;
  fit.residual_se = std::sqrt(sigma2);
  for (int c = 0; c < p; ++c) {
    CoefficientEstimate coef;
    coef.name = c == 0 ? "(Intercept)" : data.names[c - 1];
    coef.estimate = beta(c);
    coef.std_error = std::sqrt(sigma2 * xtx_inv(c, c));
    if (coef.std_error > 0.0) {
      coef.t_value = coef.estimate / coef.std_error;
      coef.p_value = t_two_sided_p(coef.t_value, TDist(dof));
    } else {
      coef.t_value = coef.estimate == 0.0 ? 0.0
                                          : std::copysign(std::numeric_limits<double>::infinity(),
                                                          coef.estimate);
      coef.p_value = coef.estimate == 0.0 ? 1.0 : 0.0;
    }
    fit.coefficients.push_back(coef);
  }

  const double y_mean = y.mean();
  const double sst = (y.array() - y_mean).matrix().squaredNorm();
  fit.f_df1 = k;
  fit.f_df2 = dof;
  if (sst > 0.0 && sse < sst) {
    fit.r_squared = 1.0 - sse / sst;
  } else {
    fit.r_squared = 0.0;
  }
  fit.adj_r_squared = 1.0 - (1.0 - fit.r_squared) * (n - 1.0) / dof;
  if (sigma2 > 0.0) {
    fit.f_stat = (sst - sse) / k / sigma2;
    if (fit.f_stat < 0.0) fit.f_stat = 0.0;
    fit.f_p_value = f_upper_tail(fit.f_stat, FDist(k, dof));
  } else if (sst > 0.0) {
    fit.f_stat = std::numeric_limits<double>::infinity();
    fit.f_p_value = 0.0;
  } else {
    fit.f_stat = 0.0;
    fit.f_p_value = 1.0;
  }
  return fit;
}

RegressionData drop_predictor(const RegressionData& data, int i) {
  if (i < 0 || i >= static_cast<int>(data.columns.size())) {
    throw std::domain_error("drop_predictor: column index out of range");
  }
  RegressionData reduced = data;
  reduced.columns.erase(reduced.columns.begin() + i);
  reduced.names.erase(reduced.names.begin() + i);
  return reduced;
}

FtContradiction classify_contradiction(const RegressionFit& fit, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0, 1)");
  if (fit.coefficients.size() < 2) throw std::domain_error("classify: fit has no slopes");
  const bool f_rejects = fit.f_p_value < alpha;
  bool any_slope = false;
  bool all_slopes = true;
  for (std::size_t c = 1; c < fit.coefficients.size(); ++c) {
    const bool rejects = fit.coefficients[c].p_value < alpha;
    any_slope = any_slope || rejects;
    all_slopes = all_slopes && rejects;
  }
  if (f_rejects && !any_slope) return FtContradiction::case_j;
  if (!f_rejects && any_slope) return FtContradiction::case_jj;
  return FtContradiction::agree;
}

const char* to_string(FtContradiction label) {
  switch (label) {
    case FtContradiction::agree: return "agree";
    case FtContradiction::case_j: return "case_j";
    case FtContradiction::case_jj: return "case_jj";
  }
  return "?";
}

}  // namespace anovatk
