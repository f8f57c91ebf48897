#pragma once

#include <cstdint>
#include <vector>

#include "anovatk/anova.hpp"
#include "anovatk/report.hpp"

namespace anovatk {

/// The two disagreement patterns of the balanced constructions.
///   anova_only - ANOVA rejects, no pair is rejected (needs G > 0)
///   tk_only    - a pair is rejected, ANOVA does not reject (needs H < 0)
enum class FamilyCase { anova_only = 1, tk_only = 2 };

/// Balanced family: k groups of n/k observations, equal group sd s, group
/// means fixed to the case pattern (half ones / a single one).
struct FamilySpec {
  int k = 4;
  int n = 40;
  double alpha = 0.05;
  FamilyCase kind = FamilyCase::anova_only;
};

/// Admissible interval of s^2 = MSE values realizing the pattern.
struct MseWindow {
  double lower = 0.0;
  double upper = 0.0;
  bool nonempty() const { return lower < upper; }
  double midpoint() const { return 0.5 * (lower + upper); }
};

/// G(alpha, k, nu) = Q^2/F_crit - 4 (1 - 1/k); positive iff the anova_only
/// window can be nonempty.
double g_function(double alpha, int k, int nu);

/// H(alpha, k, nu) = Q^2/F_crit - k; negative iff the tk_only window can be
/// nonempty. Identically G + 4 (1 - 1/k) - k.
double h_function(double alpha, int k, int nu);

/// Signs of G and H without computing the Q critical value: the comparison
/// Q^2 vs c F_crit is equivalent to q_cdf(sqrt(c F_crit)) vs 1 - alpha
/// because the CDF is strictly increasing. One CDF evaluation per point,
/// which is what makes the big sign scans affordable.
bool g_positive(double alpha, int k, int nu);
int h_sign(double alpha, int k, int nu);

enum class SignClass { all_positive, all_negative, mixed };

struct HSignTable {
  std::vector<double> alphas;
  std::vector<int> ks;                   // k = 3 .. k_max
  std::vector<std::vector<SignClass>> cells;  // [alpha index][k index]
};

/// Classifies the sign of H over the nu grid for every (alpha, k).
HSignTable h_sign_table(const std::vector<double>& alphas, int k_max,
                        const std::vector<int>& nu_grid);

/// The default scan grid: nu in {1, ..., 1000} plus 10^6 as a proxy for the
/// limit in nu.
std::vector<int> default_nu_grid();

MseWindow mse_window(const FamilySpec& spec);

/// m values with sample mean exactly target_mean and sample sd (divisor
/// m - 1) exactly target_sd, from a seeded base vector standardized in two
/// passes and affinely mapped.
std::vector<double> synthesize_group(int m, double target_mean, double target_sd,
                                     std::uint64_t seed);

struct FamilySample {
  GroupedSample sample;
  ContradictionReport report;
  double s_squared = 0.0;  // the chosen common group variance
};

/// Builds a sample realizing the requested pattern (s^2 = window midpoint)
/// and verifies the verdicts by actually running both tests on it.
FamilySample build_family_sample(const FamilySpec& spec, std::uint64_t seed);

/// Seeded homoscedastic normal sampler.
struct GeneratorSpec {
  std::vector<double> means;
  double sigma = 1.0;
  std::vector<int> sizes;
  std::uint64_t seed = 0;
};

GroupedSample sample_inah(const GeneratorSpec& spec);

}  // namespace anovatk
