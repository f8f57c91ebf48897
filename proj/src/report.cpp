#include "anovatk/report.hpp"

#include <algorithm>
#include <stdexcept>

#include "anovatk/errors.hpp"

namespace anovatk {

ContradictionReport full_report(const GroupedSample& s, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0, 1)");

  ContradictionReport report;
  report.alpha = alpha;
  report.anova = anova_table(s);
  report.anova_rejects = anova_reject(report.anova, alpha);
  report.tk_rows = tk_test(s, alpha);

  const bool any_pair_rejected =
      std::any_of(report.tk_rows.begin(), report.tk_rows.end(),
                  [](const PairwiseComparison& row) { return row.reject; });

  if (report.anova_rejects && !any_pair_rejected) {
    report.case_label = CaseLabel::case_i;
  } else if (!report.anova_rejects && any_pair_rejected) {
    report.case_label = CaseLabel::case_ii;
  } else {
    report.case_label = CaseLabel::agree;
  }
  if (report.anova_rejects && report.case_label == CaseLabel::case_ii) {
    throw numeric_error("case labels case_i and case_ii cannot hold at once");
  }

  if (report.case_label == CaseLabel::case_ii) {
    for (const PairwiseComparison& row : report.tk_rows) {
      if (!row.reject) continue;
      const int lo = std::min(row.i, row.j);
      const int hi = std::max(row.i, row.j);
      RestrictedPairTest rt;
      rt.i = hi;
      rt.j = lo;
      const GroupedSample reduced = restrict_to_pair(s, lo, hi);
      const AnovaTable reduced_table = anova_table(reduced);
      rt.anova_p = reduced_table.p_value;
      rt.anova_rejects = anova_reject(reduced_table, alpha);
      const PairwiseComparison m = modified_tk(s, lo, hi, alpha);
      rt.modified_tk_p = m.p_adj;
      rt.tk_rejects = m.reject;
      report.restricted.push_back(rt);
      if (rt.anova_rejects && rt.tk_rejects) {
        report.contradiction_flag = true;
        report.contradiction_pairs.emplace_back(hi, lo);
      }
    }
  }
  return report;
}

const char* to_string(CaseLabel label) {
  switch (label) {
    case CaseLabel::agree: return "agree";
    case CaseLabel::case_i: return "case_i";
    case CaseLabel::case_ii: return "case_ii";
  }
  return "?";
}

}  // namespace anovatk
