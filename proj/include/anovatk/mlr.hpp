#pragma once

#include <string>
#include <vector>

namespace anovatk {

/// Predictor columns plus a response column for least squares with an
/// intercept. Columns are stored column-major.
struct RegressionData {
  std::vector<std::string> names;            // one per predictor column
  std::vector<std::vector<double>> columns;  // predictor columns, equal length
  std::string response_name = "Y";
  std::vector<double> response;
};

struct CoefficientEstimate {
  std::string name;
  double estimate = 0.0;
  double std_error = 0.0;
  double t_value = 0.0;
  double p_value = 1.0;
};

struct RegressionFit {
  std::vector<CoefficientEstimate> coefficients;  // intercept first
  double residual_se = 0.0;
  int residual_df = 0;
  double r_squared = 0.0;
  double adj_r_squared = 0.0;
  double f_stat = 0.0;
  double f_p_value = 1.0;
  int f_df1 = 0;
  int f_df2 = 0;
};

/// Least squares through a rank-revealing QR decomposition of the design
/// matrix with intercept. Throws std::domain_error on rank deficiency.
RegressionFit ols_fit(const RegressionData& data);

/// Same response with predictor column i (0-based) removed.
RegressionData drop_predictor(const RegressionData& data, int i);

/// Disagreement patterns between the overall F-test and the per-slope
/// t-tests (the intercept is never part of either hypothesis).
///   case_j  - F rejects, no slope does
///   case_jj - F does not reject, some slope does
enum class FtContradiction { agree, case_j, case_jj };

FtContradiction classify_contradiction(const RegressionFit& fit, double alpha);

const char* to_string(FtContradiction label);

}  // namespace anovatk
