#pragma once

#include <cstddef>
#include <vector>

namespace anovatk {

/// Symmetric design: groups 1 and 2 hold d observations each with means -1
/// and +1; an optional third group holds c observations with mean 0. All
/// rejection criteria read sigma^2 as the total error sum of squares of the
/// sample under test.
struct SymmetricSpec {
  int d = 2;
  int c = 0;  // 0 means the two-group case
  double sigma = 1.0;
  double alpha = 0.05;
};

bool reject_2group_anova(const SymmetricSpec& spec);
bool reject_2group_tk(const SymmetricSpec& spec);
bool reject_3group_anova(const SymmetricSpec& spec);
bool reject_3group_tk(const SymmetricSpec& spec);

/// Existence of a sigma for which the two-group ANOVA rejects while the
/// three-group ANOVA does not, expressed through the critical values:
/// F_crit(alpha, 1, 2a) / F_crit(alpha, 2, 2a+b) < 4a / (2a+b),
/// with a = d - 1, b = c - 1.
bool criterion_25(int a, int b, double alpha);

/// The studentized-range counterpart:
/// Q^2(alpha, 3, 2a+b) / Q^2(alpha, 2, 2a) < (2a+b) / (2a).
bool criterion_26(int a, int b, double alpha);

/// Positive-integer sequence with a finite prefix and an infinitely
/// repeated period.
struct QuasiPeriodicSequence {
  std::vector<int> prefix;
  std::vector<int> period;

  int term(std::size_t idx) const {  // 0-based
    if (idx < prefix.size()) return prefix[idx];
    return period[(idx - prefix.size()) % period.size()];
  }
};

/// The boundary sequence of the ANOVA criterion: (6, A^2, B^4, A, B^5,
/// (A, B^6)^inf) with A = (8,9,8,8,9) and B = (8,9,8,8,9,8,8,9).
const QuasiPeriodicSequence& anova_boundary_sequence();

/// The boundary sequence of the TK criterion: (3, 7, (8, 7^7, 8, 7^6)^inf).
const QuasiPeriodicSequence& tk_boundary_sequence();

/// The unique index a(s) with  sum_{i<=a(s)} s_i <= a < sum_{i<=a(s)+1} s_i.
int a_of(int a, const QuasiPeriodicSequence& seq);

struct SigmaInterval {
  double lo = 0.0;
  double hi = 0.0;  // half-open [lo, hi)
  bool empty() const { return !(lo < hi); }
};

/// Set of sigma for which the two-group ANOVA rejects while the three-group
/// one does not; empty exactly when criterion_25(d-1, c-1, alpha) fails.
SigmaInterval sigma_interval(int d, int c, double alpha);

struct ConjectureScan {
  bool confirmed = true;
  bool has_counterexample = false;
  int counterexample_a = 0;
  int counterexample_b = 0;
  long long cases_checked = 0;
};

/// Exhaustively compares criterion 25 (or 26) against its quasi-periodic
/// boundary prediction for every a <= a_max and b up to past the boundary.
ConjectureScan verify_conjecture(int which, int a_max, double alpha = 0.05);

}  // namespace anovatk
