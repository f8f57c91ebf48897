#pragma once

#include <vector>

#include "anovatk/anova.hpp"

namespace anovatk {

/// One row of a Tukey-Kramer comparison: groups i > j (0-based), ordered
/// the way R prints them, with diff = mean_i - mean_j.
struct PairwiseComparison {
  int i = 0;
  int j = 0;
  double diff = 0.0;
  double critical_range = 0.0;
  double p_adj = 1.0;
  double lwr = 0.0;
  double upr = 0.0;
  bool reject = false;
};

/// Tukey-Kramer test over all unordered pairs, using the pooled MSE of the
/// full sample. Rejection is strict: |diff| must exceed the critical range.
std::vector<PairwiseComparison> tk_test(const GroupedSample& s, double alpha);

/// Pairwise variant that first drops every group except i and j (0-based,
/// i < j) and then runs the two-group test on what remains.
PairwiseComparison modified_tk(const GroupedSample& s, int i, int j, double alpha);

/// CR'/CR for a balanced homoscedastic design with an even number of
/// groups: Q(alpha, 2, nu) / Q(alpha, 2*l, nu*l) with l = k/2 and
/// nu = 2 (n/k - 1).
double cr_ratio(double alpha, int k, int n);

/// Smallest nu such that Q(alpha, 2*l, nu*l) is nondecreasing in l over
/// l in {1, ..., l_max}. alpha must be one of the seven supported levels.
int q_monotone_threshold(double alpha, int l_max = 25);

}  // namespace anovatk
