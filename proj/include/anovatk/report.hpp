#pragma once

#include <utility>
#include <vector>

#include "anovatk/anova.hpp"
#include "anovatk/tukey.hpp"

namespace anovatk {

/// Joint verdict of the two tests on one sample.
///   agree   - the tests point the same way
///   case_i  - ANOVA rejects while no pair is rejected
///   case_ii - some pair is rejected while ANOVA does not reject
enum class CaseLabel { agree, case_i, case_ii };

/// Two-group follow-up for one rejected pair: ANOVA on the reduced sample
/// and the pairwise test, which are equivalent for two groups.
struct RestrictedPairTest {
  int i = 0;
  int j = 0;
  double anova_p = 1.0;
  double modified_tk_p = 1.0;
  bool anova_rejects = false;
  bool tk_rejects = false;
};

struct ContradictionReport {
  double alpha = 0.05;
  AnovaTable anova;
  bool anova_rejects = false;
  std::vector<PairwiseComparison> tk_rows;
  std::vector<RestrictedPairTest> restricted;  // one per rejected pair in case_ii
  CaseLabel case_label = CaseLabel::agree;
  bool contradiction_flag = false;
  std::vector<std::pair<int, int>> contradiction_pairs;
};

/// Runs ANOVA, the Tukey-Kramer test and, when they disagree the case_ii
/// way, the per-pair restricted tests; labels the outcome.
ContradictionReport full_report(const GroupedSample& s, double alpha);

const char* to_string(CaseLabel label);

}  // namespace anovatk
