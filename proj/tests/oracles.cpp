#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace oracles {

double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
  if (intervals % 2 != 0) ++intervals;
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) {
    sum += f(a + i * h) * (i % 2 == 0 ? 2.0 : 4.0);
  }
  return sum * h / 3.0;
}

namespace {

// Density of F(1, nu) after x = u^2: g(u) = 2 u f(u^2), finite at u = 0.
double f_one_nu_density_u(double u, int nu) {
  const double n = nu;
  const double log_b = std::lgamma(0.5) + std::lgamma(0.5 * n) - std::lgamma(0.5 * (n + 1.0));
  // 2u * (1/B) (nu u^2)^(-1/2) (1 + u^2/nu)^(-(nu+1)/2)
  return 2.0 / std::exp(log_b) / std::sqrt(n) *
         std::pow(1.0 + u * u / n, -0.5 * (n + 1.0));
}

}  // namespace

double f_one_nu_upper_tail_quadrature(double x, int nu) {
  // CDF on [0, x] in the u variable, then complement.
  const double u_max = std::sqrt(x);
  const double cdf =
      simpson([nu](double u) { return f_one_nu_density_u(u, nu); }, 0.0, u_max, 20000);
  return 1.0 - cdf;
}

double f_one_nu_critical_quadrature(double alpha, int nu) {
  double lo = 0.0, hi = 1.0;
  while (f_one_nu_upper_tail_quadrature(hi, nu) > alpha) hi *= 2.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (f_one_nu_upper_tail_quadrature(mid, nu) > alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-10 * hi) break;
  }
  return 0.5 * (lo + hi);
}

MonteCarloQuantileCheck monte_carlo_q_coverage(double q, int k, int nu, long long draws,
                                               std::uint64_t seed) {
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<long long> hits(threads, 0);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ULL * (t + 1));
      std::normal_distribution<double> normal;
      std::chi_squared_distribution<double> chi2(nu);
      const long long local = draws / threads + (t < draws % threads ? 1 : 0);
      long long count = 0;
      for (long long i = 0; i < local; ++i) {
        double lo = normal(rng), hi = lo;
        for (int j = 1; j < k; ++j) {
          const double z = normal(rng);
          lo = std::min(lo, z);
          hi = std::max(hi, z);
        }
        const double s = std::sqrt(chi2(rng) / nu);
        if ((hi - lo) / s <= q) ++count;
      }
      hits[t] = count;
    });
  }
  for (auto& th : pool) th.join();
  long long total = 0;
  for (long long h : hits) total += h;
  MonteCarloQuantileCheck out;
  out.coverage = static_cast<double>(total) / draws;
  out.standard_error = std::sqrt(out.coverage * (1.0 - out.coverage) / draws);
  return out;
}

int prefix_sum_index_linear(int a, const std::vector<int>& terms) {
  long long sum = 0;
  int count = 0;
  for (int term : terms) {
    if (sum + term > a) return count;
    sum += term;
    ++count;
  }
  throw std::domain_error("prefix_sum_index_linear: not enough terms materialized");
}

anovatk::GroupedSample random_sample(std::mt19937_64& rng, int k_min, int k_max, int n_min,
                                     int n_max) {
  std::uniform_int_distribution<int> k_dist(k_min, k_max);
  std::uniform_int_distribution<int> n_dist(n_min, n_max);
  std::normal_distribution<double> value(0.0, 1.0);
  std::uniform_real_distribution<double> shift(-5.0, 5.0);
  std::uniform_real_distribution<double> scale(0.2, 4.0);
  const int k = k_dist(rng);
  std::vector<std::vector<double>> groups(k);
  for (auto& g : groups) {
    const double mu = shift(rng);
    const double sigma = scale(rng);
    g.resize(n_dist(rng));
    for (double& v : g) v = mu + sigma * value(rng);
  }
  return anovatk::GroupedSample(std::move(groups));
}

double cached_q_critical(double alpha, int k, int nu) {
  static std::mutex mutex;
  static std::map<std::tuple<double, int, int>, double> cache;
  const auto key = std::make_tuple(alpha, k, nu);
  {
    std::lock_guard<std::mutex> lock(mutex);
    const auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const double value = anovatk::q_critical(alpha, anovatk::QDist(k, nu));
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(key, value).first->second;
}

}  // namespace oracles
