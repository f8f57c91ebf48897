#include "anovatk/anova.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "anovatk/distributions.hpp"

namespace anovatk {

namespace detail {

double mean_of(const std::vector<double>& values) {
  CompensatedSum sum;
  for (double v : values) sum.add(v);
  return sum.value() / values.size();
}

double sd_of(const std::vector<double>& values, double mean) {
  CompensatedSum ss;
  for (double v : values) {
    const double d = v - mean;
    ss.add(d * d);
  }
  return std::sqrt(ss.value() / (values.size() - 1));
}

}  // namespace detail

GroupedSample::GroupedSample(std::vector<std::vector<double>> groups,
                             std::vector<std::string> labels)
    : groups_(std::move(groups)), labels_(std::move(labels)) {
  if (groups_.size() < 2) throw std::domain_error("sample must contain at least two groups");
  for (const auto& g : groups_) {
    if (g.empty()) throw std::domain_error("every group must contain at least one observation");
    for (double v : g) {
      if (!std::isfinite(v)) throw std::domain_error("observations must be finite");
    }
    total_ += static_cast<int>(g.size());
  }
  if (total_ - group_count() < 1) {
    throw std::domain_error("sample must have at least one error degree of freedom");
  }
  if (labels_.empty()) {
    for (std::size_t j = 0; j < groups_.size(); ++j) {
      labels_.push_back("Group" + std::to_string(j + 1));
    }
  }
  if (labels_.size() != groups_.size()) {
    throw std::domain_error("label count must match group count");
  }
}

SampleSummary summarize(const GroupedSample& s) {
  SampleSummary out;
  detail::CompensatedSum weighted;
  for (int j = 0; j < s.group_count(); ++j) {
    GroupSummary g;
    g.n = s.group_size(j);
    g.mean = detail::mean_of(s.group(j));
    if (g.n >= 2) {
      g.sd = detail::sd_of(s.group(j), g.mean);
      g.sd_defined = true;
    }
    weighted.add(g.n * g.mean);
    out.groups.push_back(g);
  }
  out.grand_mean = weighted.value() / s.total_size();
  return out;
}

AnovaTable anova_table(const GroupedSample& s) {
  const SampleSummary summary = summarize(s);
  const int k = s.group_count();
  const int n = s.total_size();

  AnovaTable t;
  t.df1 = k - 1;
  t.df2 = n - k;
  t.grand_mean = summary.grand_mean;

  detail::CompensatedSum ss_tr;
  detail::CompensatedSum sse;
  for (int j = 0; j < k; ++j) {
    const double dev = summary.groups[j].mean - summary.grand_mean;
    ss_tr.add(summary.groups[j].n * dev * dev);
    for (double v : s.group(j)) {
      const double d = v - summary.groups[j].mean;
      sse.add(d * d);
    }
  }
  t.ss_tr = ss_tr.value();
  t.sse = sse.value();

  // Same quantity through the pairwise mean-difference identity.
  detail::CompensatedSum pairwise;
  for (int j = 0; j < k; ++j) {
    for (int i = j + 1; i < k; ++i) {
      const double d = summary.groups[j].mean - summary.groups[i].mean;
      pairwise.add(static_cast<double>(summary.groups[j].n) * summary.groups[i].n * d * d);
    }
  }
  t.ss_tr_pairwise = pairwise.value() / n;

  t.ms_tr = t.ss_tr / t.df1;
  t.mse = t.sse / t.df2;
  if (t.mse > 0.0) {
    t.f_stat = t.ms_tr / t.mse;
    t.p_value = f_upper_tail(t.f_stat, FDist(t.df1, t.df2));
  } else if (t.ss_tr > 0.0) {
    t.f_stat = std::numeric_limits<double>::infinity();
    t.p_value = 0.0;
  } else {
    t.degenerate = true;
    t.f_stat = 0.0;
    t.p_value = 1.0;
  }
  return t;
}

bool anova_reject(const AnovaTable& t, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0, 1)");
  if (t.degenerate) return false;
  if (std::isinf(t.f_stat)) return true;
  return t.f_stat > f_critical(alpha, FDist(t.df1, t.df2));
}

bool anova_reject(const GroupedSample& s, double alpha) {
  return anova_reject(anova_table(s), alpha);
}

GroupedSample restrict_to_pair(const GroupedSample& s, int i, int j) {
  if (i < 0 || j >= s.group_count() || i >= j) {
    throw std::domain_error("restrict_to_pair: need group indices i < j within the sample");
  }
  return GroupedSample({s.group(i), s.group(j)}, {s.label(i), s.label(j)});
}

}  // namespace anovatk
