#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace anovatk {

/// k groups of real observations; the universal input of the ANOVA and
/// Tukey-Kramer tests. Validated on construction: k >= 2, every group
/// nonempty, at least one error degree of freedom, all values finite.
class GroupedSample {
public:
  GroupedSample(std::vector<std::vector<double>> groups, std::vector<std::string> labels = {});

  int group_count() const { return static_cast<int>(groups_.size()); }
  int group_size(int j) const { return static_cast<int>(groups_[j].size()); }
  int total_size() const { return total_; }
  int error_df() const { return total_ - group_count(); }
  const std::vector<double>& group(int j) const { return groups_[j]; }
  const std::vector<std::vector<double>>& groups() const { return groups_; }
  const std::string& label(int j) const { return labels_[j]; }
  const std::vector<std::string>& labels() const { return labels_; }

private:
  std::vector<std::vector<double>> groups_;
  std::vector<std::string> labels_;
  int total_ = 0;
};

struct GroupSummary {
  int n = 0;
  double mean = 0.0;
  double sd = 0.0;        // divisor n - 1; meaningful only if sd_defined
  bool sd_defined = false;
};

struct SampleSummary {
  std::vector<GroupSummary> groups;
  double grand_mean = 0.0;
};

SampleSummary summarize(const GroupedSample& s);

struct AnovaTable {
  double ss_tr = 0.0;           // between-group sum of squares, group-mean form
  double ss_tr_pairwise = 0.0;  // same quantity via the pairwise mean-difference form
  double sse = 0.0;
  double ms_tr = 0.0;
  double mse = 0.0;
  double f_stat = 0.0;
  int df1 = 0;
  int df2 = 0;
  double p_value = 1.0;
  double grand_mean = 0.0;
  bool degenerate = false;  // all observations identical: F is 0/0
};

AnovaTable anova_table(const GroupedSample& s);

bool anova_reject(const AnovaTable& t, double alpha);
bool anova_reject(const GroupedSample& s, double alpha);

/// Two-group sample that keeps only groups i and j (0-based, i < j) with
/// their original observations and labels.
GroupedSample restrict_to_pair(const GroupedSample& s, int i, int j);

namespace detail {
/// Neumaier compensated summation; keeps the table reproductions stable.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

double mean_of(const std::vector<double>& values);
double sd_of(const std::vector<double>& values, double mean);
}  // namespace detail

}  // namespace anovatk
