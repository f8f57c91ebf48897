#include "anovatk/symmetric.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "anovatk/distributions.hpp"
#include "anovatk/parallel.hpp"

namespace anovatk {

namespace {

void check_two_group_spec(const SymmetricSpec& spec) {
  if (spec.d < 2) throw std::domain_error("symmetric spec: d must be >= 2");
  if (!(spec.sigma > 0.0)) throw std::domain_error("symmetric spec: sigma must be positive");
  if (!(spec.alpha > 0.0 && spec.alpha < 1.0)) throw std::domain_error("alpha must lie in (0, 1)");
}

void check_three_group_spec(const SymmetricSpec& spec) {
  check_two_group_spec(spec);
  if (spec.c < 1) throw std::domain_error("symmetric spec: the third group needs c >= 1");
}

void check_ab(int a, int b) {
  if (a < 1) throw std::domain_error("a must be >= 1");
  if (b < 0) throw std::domain_error("b must be >= 0");
}

}  // namespace

bool reject_2group_anova(const SymmetricSpec& spec) {
  check_two_group_spec(spec);
  const double d = spec.d;
  const double lhs = 4.0 * d * (d - 1.0) / (spec.sigma * spec.sigma);
  return lhs > f_critical(spec.alpha, FDist(1, 2 * spec.d - 2));
}

bool reject_2group_tk(const SymmetricSpec& spec) {
  check_two_group_spec(spec);
  const double d = spec.d;
  const double lhs = 8.0 * d * (d - 1.0) / (spec.sigma * spec.sigma);
  const double q = q_critical(spec.alpha, QDist(2, 2 * spec.d - 2));
  return lhs > q * q;
}

bool reject_3group_anova(const SymmetricSpec& spec) {
  check_three_group_spec(spec);
  const double d = spec.d;
  const int nu = 2 * spec.d + spec.c - 3;
  const double lhs = d * nu / (spec.sigma * spec.sigma);
  return lhs > f_critical(spec.alpha, FDist(2, nu));
}

bool reject_3group_tk(const SymmetricSpec& spec) {
  check_three_group_spec(spec);
  const double d = spec.d;
  const int nu = 2 * spec.d + spec.c - 3;
  const double lhs = 4.0 * d * nu / (spec.sigma * spec.sigma);
  const double q = q_critical(spec.alpha, QDist(3, nu));
  return lhs > q * q;
}

bool criterion_25(int a, int b, double alpha) {
  check_ab(a, b);
  const double f1 = f_critical(alpha, FDist(1, 2 * a));
  const double f2 = f_critical(alpha, FDist(2, 2 * a + b));
  return f1 / f2 < 4.0 * a / (2.0 * a + b);
}

bool criterion_26(int a, int b, double alpha) {
  check_ab(a, b);
  const double q3 = q_critical(alpha, QDist(3, 2 * a + b));
  const double q2 = q_critical(alpha, QDist(2, 2 * a));
  return (q3 * q3) / (q2 * q2) < (2.0 * a + b) / (2.0 * a);
}

const QuasiPeriodicSequence& anova_boundary_sequence() {
  static const QuasiPeriodicSequence seq = [] {
    const std::vector<int> a = {8, 9, 8, 8, 9};
    const std::vector<int> b = {8, 9, 8, 8, 9, 8, 8, 9};
    QuasiPeriodicSequence s;
    auto append = [](std::vector<int>& dst, const std::vector<int>& block, int times) {
      for (int t = 0; t < times; ++t) dst.insert(dst.end(), block.begin(), block.end());
    };
    s.prefix.push_back(6);
    append(s.prefix, a, 2);
    append(s.prefix, b, 4);
    append(s.prefix, a, 1);
    append(s.prefix, b, 5);
    append(s.period, a, 1);
    append(s.period, b, 6);
    return s;
  }();
  return seq;
}

const QuasiPeriodicSequence& tk_boundary_sequence() {
  static const QuasiPeriodicSequence seq = [] {
    QuasiPeriodicSequence s;
    s.prefix = {3, 7};
    s.period = {8, 7, 7, 7, 7, 7, 7, 7, 8, 7, 7, 7, 7, 7, 7};
    return s;
  }();
  return seq;
}

int a_of(int a, const QuasiPeriodicSequence& seq) {
  if (a < 1) throw std::domain_error("a_of: a must be >= 1");
  if (seq.period.empty()) throw std::domain_error("a_of: sequence period must be nonempty");
  long long partial = 0;
  int count = 0;
  for (;;) {
    const long long next = partial + seq.term(count);
    if (next > a) return count;
    partial = next;
    ++count;
  }
}

SigmaInterval sigma_interval(int d, int c, double alpha) {
  if (d < 2) throw std::domain_error("sigma_interval: d must be >= 2");
  if (c < 1) throw std::domain_error("sigma_interval: c must be >= 1");
  const int nu3 = 2 * d + c - 3;
  const double f1 = f_critical(alpha, FDist(1, 2 * d - 2));
  const double f2 = f_critical(alpha, FDist(2, nu3));
  // Two-group rejection: sigma^2 < 4 d (d-1) / F1 (strict).
  // Three-group non-rejection: sigma^2 >= d nu3 / F2.
  const double upper_sq = 4.0 * d * (d - 1.0) / f1;
  const double lower_sq = d * static_cast<double>(nu3) / f2;
  SigmaInterval interval;
  if (lower_sq < upper_sq) {
    interval.lo = std::sqrt(lower_sq);
    interval.hi = std::sqrt(upper_sq);
  }
  return interval;
}

ConjectureScan verify_conjecture(int which, int a_max, double alpha) {
  if (which != 25 && which != 26) throw std::domain_error("verify_conjecture: which must be 25 or 26");
  if (a_max < 1) throw std::domain_error("verify_conjecture: a_max must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0, 1)");

  const QuasiPeriodicSequence& seq =
      which == 25 ? anova_boundary_sequence() : tk_boundary_sequence();

  // Critical values depend on (a, b) only through a and 2a + b, so the scan
  // reuses two precomputed tables instead of re-solving per pair.
  std::vector<int> a_of_table(a_max + 1);
  int b_span = 0;
  for (int a = 1; a <= a_max; ++a) {
    a_of_table[a] = a_of(a, seq);
    const int b_max = which == 25 ? a + a_of_table[a] + 2 : a + 2;
    b_span = std::max(b_span, 2 * a + b_max);
  }

  std::vector<double> per_a(a_max + 1);   // F(1, 2a) or Q(2, 2a)
  std::vector<double> per_nu(b_span + 1); // F(2, nu) or Q(3, nu)
  detail::parallel_for(a_max, [&](std::size_t idx) {
    const int a = static_cast<int>(idx) + 1;
    per_a[a] = which == 25 ? f_critical(alpha, FDist(1, 2 * a))
                           : q_critical(alpha, QDist(2, 2 * a));
  });
  detail::parallel_for(b_span - 1, [&](std::size_t idx) {
    const int nu = static_cast<int>(idx) + 2;
    per_nu[nu] = which == 25 ? f_critical(alpha, FDist(2, nu))
                             : q_critical(alpha, QDist(3, nu));
  });

  ConjectureScan scan;
  std::atomic<long long> cases{0};
  std::mutex mutex;
  detail::parallel_for(a_max, [&](std::size_t idx) {
    const int a = static_cast<int>(idx) + 1;
    const int b_max = which == 25 ? a + a_of_table[a] + 2 : a + 2;
    for (int b = 0; b <= b_max; ++b) {
      bool holds, predicted;
      if (which == 25) {
        holds = per_a[a] / per_nu[2 * a + b] < 4.0 * a / (2.0 * a + b);
        predicted = b < a + a_of_table[a];
      } else {
        const double q3 = per_nu[2 * a + b];
        const double q2 = per_a[a];
        holds = (q3 * q3) / (q2 * q2) < (2.0 * a + b) / (2.0 * a);
        predicted = b >= a - a_of_table[a];
      }
      cases.fetch_add(1, std::memory_order_relaxed);
      if (holds != predicted) {
        std::lock_guard<std::mutex> lock(mutex);
        if (scan.confirmed || a < scan.counterexample_a ||
            (a == scan.counterexample_a && b < scan.counterexample_b)) {
          scan.confirmed = false;
          scan.has_counterexample = true;
          scan.counterexample_a = a;
          scan.counterexample_b = b;
        }
      }
    }
  });
  scan.cases_checked = cases.load();
  return scan;
}

}  // namespace anovatk
