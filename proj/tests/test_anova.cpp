#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "anovatk/anova.hpp"
#include "anovatk/io.hpp"
#include "oracles.hpp"

using namespace anovatk;

namespace {

GroupedSample fixture(const char* name) {
  return io::read_grouped_csv_file(std::string(ANOVATK_TABLES_DIR) + "/" + name);
}

}  // namespace

TEST_CASE("sample validation") {
  CHECK_THROWS_AS(GroupedSample({{1.0, 2.0}}), std::domain_error);
  CHECK_THROWS_AS(GroupedSample({{1.0}, {}}), std::domain_error);
  CHECK_THROWS_AS(GroupedSample({{1.0}, {2.0}}), std::domain_error);  // no error df
  CHECK_THROWS_AS(GroupedSample({{1.0, NAN}, {2.0}}), std::domain_error);
  const GroupedSample ok({{1.0, 2.0}, {3.0}});
  CHECK(ok.total_size() == 3);
  CHECK(ok.error_df() == 1);
  CHECK(ok.label(0) == "Group1");
}

TEST_CASE("summaries of the first worked sample") {
  const GroupedSample s = fixture("1A.csv");
  const SampleSummary summary = summarize(s);
  CHECK(summary.groups[0].mean == doctest::Approx(4.614).epsilon(1e-3));
  CHECK(summary.groups[1].mean == doctest::Approx(39.311).epsilon(1e-3));
  CHECK(summary.groups[2].mean == doctest::Approx(35.042).epsilon(1e-3));
  CHECK(summary.grand_mean == doctest::Approx(26.322).epsilon(1e-3));

  // Grand mean two ways: flat average and weighted average of group means.
  detail::CompensatedSum flat;
  for (int j = 0; j < s.group_count(); ++j) {
    for (double v : s.group(j)) flat.add(v);
  }
  CHECK(summary.grand_mean == doctest::Approx(flat.value() / s.total_size()).epsilon(1e-14));
}

TEST_CASE("summaries of degenerate groups") {
  const GroupedSample single({{3.5}, {1.0, 2.0}});
  const SampleSummary summary = summarize(single);
  CHECK(summary.groups[0].mean == 3.5);
  CHECK_FALSE(summary.groups[0].sd_defined);
  CHECK(summary.groups[1].sd_defined);

  const GroupedSample constant({{2.0, 2.0}, {2.0, 2.0, 2.0}});
  const SampleSummary cs = summarize(constant);
  CHECK(cs.grand_mean == 2.0);
  CHECK(cs.groups[0].sd == 0.0);
  CHECK(cs.groups[1].sd == 0.0);
}

TEST_CASE("anova table reproduces the first published table") {
  const AnovaTable t = anova_table(fixture("1A.csv"));
  CHECK(t.df1 == 2);
  CHECK(t.df2 == 27);
  CHECK(t.ss_tr == doctest::Approx(7159.763).epsilon(1e-4));
  CHECK(t.sse == doctest::Approx(28446.164).epsilon(1e-4));
  CHECK(t.ms_tr == doctest::Approx(3579.881).epsilon(1e-4));
  CHECK(t.mse == doctest::Approx(1053.562).epsilon(1e-4));
  CHECK(t.f_stat == doctest::Approx(3.39789).epsilon(1e-4));
  CHECK(t.p_value == doctest::Approx(0.04828).epsilon(1e-4));
}

TEST_CASE("anova table reproduces the second published table") {
  const AnovaTable t = anova_table(fixture("2A.csv"));
  CHECK(t.ss_tr == doctest::Approx(4948.742).epsilon(1e-4));
  CHECK(t.sse == doctest::Approx(20825.208).epsilon(1e-4));
  CHECK(t.f_stat == doctest::Approx(3.20804).epsilon(1e-4));
  CHECK(t.p_value == doctest::Approx(0.056236).epsilon(1e-4));
}

TEST_CASE("anova edge cases") {
  // Identical group means with spread: no between-group variation.
  const GroupedSample flat({{1.0, -1.0}, {0.5, -0.5}});
  const AnovaTable t = anova_table(flat);
  CHECK(t.ss_tr == doctest::Approx(0.0));
  CHECK(t.f_stat == 0.0);
  CHECK(t.p_value == 1.0);
  CHECK_FALSE(anova_reject(flat, 0.05));

  // Zero MSE with separation: certain rejection.
  const GroupedSample separated({{1.0, 1.0}, {2.0, 2.0}});
  const AnovaTable sep = anova_table(separated);
  CHECK(std::isinf(sep.f_stat));
  CHECK(sep.p_value == 0.0);
  CHECK(anova_reject(separated, 0.05));

  // Everything identical: degenerate.
  const GroupedSample all_equal({{2.0, 2.0}, {2.0, 2.0}});
  CHECK(anova_table(all_equal).degenerate);
  CHECK_FALSE(anova_reject(all_equal, 0.05));
}

TEST_CASE("anova rejection matches the published verdicts") {
  CHECK(anova_reject(fixture("1A.csv"), 0.05));
  CHECK_FALSE(anova_reject(fixture("2A.csv"), 0.05));
}

TEST_CASE("the two between-group sum forms agree") {
  std::mt19937_64 rng(7101);
  for (int rep = 0; rep < 1000; ++rep) {
    const GroupedSample s = oracles::random_sample(rng, 2, 6, 1, 9);
    const AnovaTable t = anova_table(s);
    const double scale = std::max(1.0, std::fabs(t.ss_tr));
    CHECK(std::fabs(t.ss_tr - t.ss_tr_pairwise) / scale < 1e-12);
  }
}

TEST_CASE("treatment and error sums decompose the total") {
  std::mt19937_64 rng(7102);
  for (int rep = 0; rep < 300; ++rep) {
    const GroupedSample s = oracles::random_sample(rng, 2, 5, 1, 8);
    const AnovaTable t = anova_table(s);
    detail::CompensatedSum total;
    for (int j = 0; j < s.group_count(); ++j) {
      for (double v : s.group(j)) {
        const double d = v - t.grand_mean;
        total.add(d * d);
      }
    }
    const double scale = std::max(1.0, total.value());
    CHECK(std::fabs(t.ss_tr + t.sse - total.value()) / scale < 1e-12);
  }
}

TEST_CASE("affine changes of scale leave the test invariant") {
  std::mt19937_64 rng(7103);
  std::uniform_real_distribution<double> a_dist(-3.0, 3.0);
  std::uniform_real_distribution<double> b_dist(-50.0, 50.0);
  for (int rep = 0; rep < 200; ++rep) {
    const GroupedSample s = oracles::random_sample(rng, 2, 5, 2, 7);
    double a = a_dist(rng);
    if (std::fabs(a) < 0.05) a = 1.0;
    const double b = b_dist(rng);
    std::vector<std::vector<double>> mapped = s.groups();
    for (auto& g : mapped) {
      for (double& v : g) v = a * v + b;
    }
    const AnovaTable before = anova_table(s);
    const AnovaTable after = anova_table(GroupedSample(std::move(mapped)));
    CHECK(after.f_stat == doctest::Approx(before.f_stat).epsilon(1e-10));
    CHECK(after.p_value == doctest::Approx(before.p_value).epsilon(1e-10));
    CHECK(anova_reject(before, 0.05) == anova_reject(after, 0.05));
  }
}

TEST_CASE("restricting to a pair keeps the original observations") {
  const GroupedSample s = fixture("2A.csv");
  const GroupedSample pair = restrict_to_pair(s, 0, 2);
  CHECK(pair.group_count() == 2);
  CHECK(pair.group(0) == s.group(0));
  CHECK(pair.group(1) == s.group(2));
  CHECK(pair.label(1) == "Group3");

  const AnovaTable t = anova_table(pair);
  CHECK(t.f_stat == doctest::Approx(6.044).epsilon(1e-3));
  CHECK(t.p_value == doctest::Approx(0.024315).epsilon(1e-3));

  const SampleSummary reduced = summarize(pair);
  const SampleSummary full = summarize(s);
  const double weighted = (full.groups[0].n * full.groups[0].mean +
                           full.groups[2].n * full.groups[2].mean) /
                          (full.groups[0].n + full.groups[2].n);
  CHECK(reduced.grand_mean == doctest::Approx(weighted).epsilon(1e-14));

  // Restriction of a two-group sample is the identity.
  const GroupedSample two({{1.0, 2.0}, {3.0, 4.0}});
  const GroupedSample same = restrict_to_pair(two, 0, 1);
  CHECK(same.group(0) == two.group(0));
  CHECK(same.group(1) == two.group(1));

  CHECK_THROWS_AS(restrict_to_pair(s, 1, 1), std::domain_error);
  CHECK_THROWS_AS(restrict_to_pair(s, 2, 1), std::domain_error);
  CHECK_THROWS_AS(restrict_to_pair(s, 0, 3), std::domain_error);
}
