#include "anovatk/generators.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "anovatk/distributions.hpp"
#include "anovatk/errors.hpp"
#include "anovatk/parallel.hpp"

namespace anovatk {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0, 1)");
}

void check_gh_args(int k, int nu) {
  if (k < 2) throw std::domain_error("k must be >= 2");
  if (nu < 1) throw std::domain_error("nu must be >= 1");
}

// Standard normal deviates from mt19937_64 via Box-Muller on explicitly
// constructed uniforms, so the stream depends only on the engine contract.
class SeededNormals {
public:
  explicit SeededNormals(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

private:
  double uniform01() {
    // (0, 1): top 53 bits, offset half an ulp away from zero.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53;
  }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<double> case_means(const FamilySpec& spec) {
  std::vector<double> means(spec.k, 0.0);
  if (spec.kind == FamilyCase::anova_only) {
    for (int j = 0; j < spec.k / 2; ++j) means[j] = 1.0;
  } else {
    means[0] = 1.0;
  }
  return means;
}

void validate_family_spec(const FamilySpec& spec) {
  check_alpha(spec.alpha);
  if (spec.k < 2) throw std::domain_error("family spec: k must be >= 2");
  if (spec.kind == FamilyCase::anova_only && spec.k % 2 != 0) {
    throw std::domain_error("family spec: the half-ones mean pattern needs an even k");
  }
  if (spec.n % spec.k != 0) throw std::domain_error("family spec: n must be divisible by k");
  if (spec.n / spec.k < 2) throw std::domain_error("family spec: need n/k >= 2");
}

}  // namespace

double g_function(double alpha, int k, int nu) {
  check_alpha(alpha);
  check_gh_args(k, nu);
  const double q = q_critical(alpha, QDist(k, nu));
  const double f = f_critical(alpha, FDist(k - 1, nu));
  return q * q / f - 4.0 * (1.0 - 1.0 / k);
}

double h_function(double alpha, int k, int nu) {
  check_alpha(alpha);
  check_gh_args(k, nu);
  const double q = q_critical(alpha, QDist(k, nu));
  const double f = f_critical(alpha, FDist(k - 1, nu));
  return q * q / f - k;
}

bool g_positive(double alpha, int k, int nu) {
  check_alpha(alpha);
  check_gh_args(k, nu);
  const double f = f_critical(alpha, FDist(k - 1, nu));
  return q_cdf(std::sqrt(4.0 * (1.0 - 1.0 / k) * f), QDist(k, nu)) < 1.0 - alpha;
}

int h_sign(double alpha, int k, int nu) {
  check_alpha(alpha);
  check_gh_args(k, nu);
  const double f = f_critical(alpha, FDist(k - 1, nu));
  const double c = q_cdf(std::sqrt(k * f), QDist(k, nu));
  if (c < 1.0 - alpha) return 1;
  if (c > 1.0 - alpha) return -1;
  return 0;
}

std::vector<int> default_nu_grid() {
  std::vector<int> grid;
  grid.reserve(1001);
  for (int nu = 1; nu <= 1000; ++nu) grid.push_back(nu);
  grid.push_back(1000000);
  return grid;
}

HSignTable h_sign_table(const std::vector<double>& alphas, int k_max,
                        const std::vector<int>& nu_grid) {
  if (alphas.empty() || nu_grid.empty()) throw std::domain_error("h_sign_table: empty grid");
  if (k_max < 3) throw std::domain_error("h_sign_table: k_max must be >= 3");

  HSignTable table;
  table.alphas = alphas;
  for (int k = 3; k <= k_max; ++k) table.ks.push_back(k);
  table.cells.assign(alphas.size(), std::vector<SignClass>(table.ks.size()));

  const std::size_t cells = alphas.size() * table.ks.size();
  detail::parallel_for(cells, [&](std::size_t idx) {
    const std::size_t ai = idx / table.ks.size();
    const std::size_t ki = idx % table.ks.size();
    bool seen_pos = false;
    bool seen_neg = false;
    for (int nu : nu_grid) {
      const int sign = h_sign(alphas[ai], table.ks[ki], nu);
      if (sign > 0) seen_pos = true;
      if (sign < 0) seen_neg = true;
      if (seen_pos && seen_neg) break;
    }
    table.cells[ai][ki] = seen_pos && seen_neg ? SignClass::mixed
                          : seen_pos           ? SignClass::all_positive
                                               : SignClass::all_negative;
  });
  return table;
}

MseWindow mse_window(const FamilySpec& spec) {
  validate_family_spec(spec);
  const int nu = spec.n - spec.k;
  const double m = static_cast<double>(spec.n) / spec.k;
  const double q = q_critical(spec.alpha, QDist(spec.k, nu));
  const double f = f_critical(spec.alpha, FDist(spec.k - 1, nu));
  // With the fixed mean patterns, the rejection thresholds of the two tests
  // reduce to these endpoints for s^2 = MSE.
  const double tk_threshold = m / (q * q);
  MseWindow window;
  if (spec.kind == FamilyCase::anova_only) {
    window.lower = tk_threshold;
    window.upper = spec.n / (4.0 * (spec.k - 1) * f);
  } else {
    window.lower = spec.n / (static_cast<double>(spec.k) * spec.k * f);
    window.upper = tk_threshold;
  }
  return window;
}

std::vector<double> synthesize_group(int m, double target_mean, double target_sd,
                                     std::uint64_t seed) {
  if (m < 1) throw std::domain_error("synthesize_group: need at least one value");
  if (target_sd < 0.0) throw std::domain_error("synthesize_group: sd must be nonnegative");
  if (m < 2) {
    if (target_sd > 0.0) {
      throw std::domain_error("synthesize_group: a single value cannot carry positive sd");
    }
    return {target_mean};
  }

  SeededNormals normals(seed);
  std::vector<double> values(m);
  for (;;) {
    for (double& v : values) v = normals.next();
    // Two standardization passes leave mean/sd equal to 0/1 at roundoff.
    for (int pass = 0; pass < 2; ++pass) {
      const double mean = detail::mean_of(values);
      for (double& v : values) v -= mean;
      const double sd = detail::sd_of(values, 0.0);
      if (sd == 0.0) break;
      for (double& v : values) v /= sd;
    }
    if (detail::sd_of(values, detail::mean_of(values)) > 0.0) break;
  }
  for (double& v : values) v = target_mean + target_sd * v;
  return values;
}

FamilySample build_family_sample(const FamilySpec& spec, std::uint64_t seed) {
  const MseWindow window = mse_window(spec);
  if (!window.nonempty()) {
    const int nu = spec.n - spec.k;
    const std::string condition =
        spec.kind == FamilyCase::anova_only
            ? "G(alpha, k, nu) > 0 fails for alpha=" : "H(alpha, k, nu) < 0 fails for alpha=";
    throw infeasible_error("family construction infeasible: " + condition +
                           std::to_string(spec.alpha) + ", k=" + std::to_string(spec.k) +
                           ", nu=" + std::to_string(nu));
  }
  const double s2 = window.midpoint();
  const double s = std::sqrt(s2);
  const std::vector<double> means = case_means(spec);
  const int per_group = spec.n / spec.k;

  std::uint64_t state = seed;
  std::vector<std::vector<double>> groups;
  groups.reserve(spec.k);
  for (int j = 0; j < spec.k; ++j) {
    groups.push_back(synthesize_group(per_group, means[j], s, splitmix64(state)));
  }

  GroupedSample sample(std::move(groups));
  ContradictionReport report = full_report(sample, spec.alpha);

  const CaseLabel expected =
      spec.kind == FamilyCase::anova_only ? CaseLabel::case_i : CaseLabel::case_ii;
  if (report.case_label != expected) {
    throw numeric_error("family construction failed its end-to-end verdict check");
  }
  return FamilySample{std::move(sample), std::move(report), s2};
}

GroupedSample sample_inah(const GeneratorSpec& spec) {
  if (spec.means.size() != spec.sizes.size() || spec.means.size() < 2) {
    throw std::domain_error("sample_inah: need matching means/sizes for at least two groups");
  }
  if (!(spec.sigma > 0.0)) throw std::domain_error("sample_inah: sigma must be positive");
  SeededNormals normals(spec.seed);
  std::vector<std::vector<double>> groups;
  for (std::size_t j = 0; j < spec.means.size(); ++j) {
    if (spec.sizes[j] < 1) throw std::domain_error("sample_inah: group sizes must be positive");
    std::vector<double> g(spec.sizes[j]);
    for (double& v : g) v = spec.means[j] + spec.sigma * normals.next();
    groups.push_back(std::move(g));
  }
  return GroupedSample(std::move(groups));
}

}  // namespace anovatk
