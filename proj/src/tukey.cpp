#include "anovatk/tukey.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "anovatk/distributions.hpp"
#include "anovatk/errors.hpp"

namespace anovatk {

namespace {

PairwiseComparison compare_pair(int i, int j, double mean_i, double mean_j, int n_i, int n_j,
                                double mse, double q_crit, const QDist& q_dist) {
  PairwiseComparison row;
  row.i = i;
  row.j = j;
  row.diff = mean_i - mean_j;
  const double se = std::sqrt(0.5 * mse * (1.0 / n_i + 1.0 / n_j));
  row.critical_range = q_crit * se;
  row.lwr = row.diff - row.critical_range;
  row.upr = row.diff + row.critical_range;
  row.reject = std::fabs(row.diff) > row.critical_range;
  if (se > 0.0) {
    row.p_adj = 1.0 - q_cdf(std::fabs(row.diff) / se, q_dist);
  } else {
    row.p_adj = row.diff == 0.0 ? 1.0 : 0.0;
  }
  return row;
}

const double kSupportedAlphas[] = {0.005, 0.01, 0.025, 0.05, 0.1, 0.25, 0.5};

}  // namespace

std::vector<PairwiseComparison> tk_test(const GroupedSample& s, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0, 1)");
  const SampleSummary summary = summarize(s);
  const int k = s.group_count();
  const AnovaTable t = anova_table(s);
  const QDist q_dist(k, s.error_df());
  const double q_crit = q_critical(alpha, q_dist);

  std::vector<PairwiseComparison> rows;
  rows.reserve(static_cast<std::size_t>(k) * (k - 1) / 2);
  for (int hi = 1; hi < k; ++hi) {
    for (int lo = 0; lo < hi; ++lo) {
      rows.push_back(compare_pair(hi, lo, summary.groups[hi].mean, summary.groups[lo].mean,
                                  summary.groups[hi].n, summary.groups[lo].n, t.mse, q_crit,
                                  q_dist));
    }
  }
  return rows;
}

PairwiseComparison modified_tk(const GroupedSample& s, int i, int j, double alpha) {
  const GroupedSample reduced = restrict_to_pair(s, i, j);
  if (reduced.total_size() < 3) {
    throw std::domain_error("modified_tk: the retained pair must have at least 3 observations");
  }
  std::vector<PairwiseComparison> rows = tk_test(reduced, alpha);
  PairwiseComparison row = rows.front();
  row.i = j;  // row is (hi, lo) in the reduced sample; relabel to the original pair
  row.j = i;
  return row;
}

double cr_ratio(double alpha, int k, int n) {
  if (k < 2 || k % 2 != 0) throw std::domain_error("cr_ratio: k must be even and >= 2");
  if (n % k != 0) throw std::domain_error("cr_ratio: n must be divisible by k");
  const int per_group = n / k;
  const int nu = 2 * (per_group - 1);
  if (nu < 1) throw std::domain_error("cr_ratio: need at least 2 observations per group");
  const int l = k / 2;
  if (l == 1) return 1.0;
  return q_critical(alpha, QDist(2, nu)) / q_critical(alpha, QDist(2 * l, nu * l));
}

int q_monotone_threshold(double alpha, int l_max) {
  const bool supported = std::any_of(std::begin(kSupportedAlphas), std::end(kSupportedAlphas),
                                     [&](double a) { return a == alpha; });
  if (!supported) throw std::domain_error("q_monotone_threshold: unsupported alpha");
  if (l_max < 2) throw std::domain_error("q_monotone_threshold: l_max must be >= 2");

  constexpr int kNuCap = 64;
  for (int nu = 1; nu <= kNuCap; ++nu) {
    bool monotone = true;
    double prev = q_critical(alpha, QDist(2, nu));
    for (int l = 2; l <= l_max; ++l) {
      const double next = q_critical(alpha, QDist(2 * l, nu * l));
      if (next < prev) {
        monotone = false;
        break;
      }
      prev = next;
    }
    if (monotone) return nu;
  }
  throw numeric_error("q_monotone_threshold: no monotone nu found below the scan cap");
}

}  // namespace anovatk
