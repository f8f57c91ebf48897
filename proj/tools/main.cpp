#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "anovatk/distributions.hpp"
#include "anovatk/errors.hpp"
#include "anovatk/generators.hpp"
#include "anovatk/io.hpp"
#include "anovatk/mlr.hpp"
#include "anovatk/report.hpp"
#include "anovatk/symmetric.hpp"
#include "anovatk/tukey.hpp"

namespace {

using namespace anovatk;

struct Options {
  std::string command;

  std::string input;
  std::string format = "text";
  double alpha = 0.05;

  std::vector<double> alpha_grid = {0.005, 0.01, 0.025, 0.05, 0.1, 0.25, 0.5};
  int nu_max = 200;

  int family_case = 1;
  int k = 4;
  int n = 40;
  std::uint64_t seed = 1;
  std::string out_path;

  int which_table = 3;
  int k_max = 20;
  int table_nu_max = 1000;
  long long asymptotic_nu = 1000000;
  int l_max = 25;

  int which_criterion = 25;
  int a_max = 100;

  std::string drop_column;
  std::string response_column;
};

std::string render_report(const ContradictionReport& report, const std::vector<std::string>& labels,
                          const std::string& format) {
  if (format == "json") return io::report_to_json(report, labels).dump(2) + "\n";
  if (format == "csv") return io::render_report_csv(report, labels);
  return io::render_report_text(report, labels);
}

int cmd_compare(const Options& opt) {
  const GroupedSample sample = io::read_grouped_csv_file(opt.input);
  const ContradictionReport report = full_report(sample, opt.alpha);
  std::cout << render_report(report, sample.labels(), opt.format);
  return 0;
}

int cmd_identity(const Options& opt) {
  if (opt.nu_max < 1) throw std::domain_error("--nu-max must be >= 1");
  std::vector<int> nus;
  for (int nu = 1; nu <= opt.nu_max; ++nu) nus.push_back(nu);
  const Lemma1Result result = verify_lemma1(opt.alpha_grid, nus);
  if (opt.format == "json") {
    nlohmann::ordered_json j;
    j["max_relative_deviation"] = result.max_relative_deviation;
    j["worst_alpha"] = result.worst_alpha;
    j["worst_nu"] = result.worst_nu;
    j["alpha_grid"] = opt.alpha_grid;
    j["nu_max"] = opt.nu_max;
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("max |Q^2(a,2,nu) - 2 F_crit(a,1,nu)| / (2 F_crit) = %.3e\n",
                result.max_relative_deviation);
    std::printf("worst cell: alpha = %g, nu = %d\n", result.worst_alpha, result.worst_nu);
  }
  return 0;
}

int cmd_search(const Options& opt) {
  FamilySpec spec;
  spec.k = opt.k;
  spec.n = opt.n;
  spec.alpha = opt.alpha;
  spec.kind = opt.family_case == 1 ? FamilyCase::anova_only : FamilyCase::tk_only;
  const FamilySample result = build_family_sample(spec, opt.seed);

  std::ostringstream csv;
  io::write_grouped_csv(csv, result.sample);
  const std::string report = render_report(result.report, result.sample.labels(), opt.format);
  if (opt.out_path.empty()) {
    std::cout << csv.str();
    std::cerr << report;
  } else {
    std::ofstream out(opt.out_path);
    if (!out) throw std::domain_error("cannot write '" + opt.out_path + "'");
    out << csv.str();
    std::cout << report;
  }
  return 0;
}

int cmd_tables(const Options& opt) {
  if (opt.which_table == 4) {
    std::printf("%-8s %s\n", "alpha", "smallest nu with Q(alpha, 2l, nu*l) nondecreasing in l");
    for (double alpha : {0.005, 0.01, 0.025, 0.05, 0.1, 0.25, 0.5}) {
      std::printf("%-8g nu >= %d\n", alpha, q_monotone_threshold(alpha, opt.l_max));
    }
    return 0;
  }
  if (opt.which_table != 3) throw std::domain_error("--which must be 3 or 4");
  std::vector<int> grid;
  for (int nu = 1; nu <= opt.table_nu_max; ++nu) grid.push_back(nu);
  if (opt.asymptotic_nu > 0) grid.push_back(static_cast<int>(opt.asymptotic_nu));
  const std::vector<double> alphas = {0.005, 0.01, 0.025, 0.05, 0.1, 0.25, 0.5};
  const HSignTable table = h_sign_table(alphas, opt.k_max, grid);
  std::printf("sign of H(alpha, k, nu) over nu grid (k = 3..%d)\n", opt.k_max);
  std::printf("%-8s", "alpha");
  for (int k : table.ks) std::printf(" %3d", k);
  std::printf("\n");
  for (std::size_t ai = 0; ai < table.alphas.size(); ++ai) {
    std::printf("%-8g", table.alphas[ai]);
    for (std::size_t ki = 0; ki < table.ks.size(); ++ki) {
      const char* mark = table.cells[ai][ki] == SignClass::all_positive   ? "+"
                         : table.cells[ai][ki] == SignClass::all_negative ? "-"
                                                                          : "~";
      std::printf(" %3s", mark);
    }
    std::printf("\n");
  }
  std::printf("(+ positive for every nu, - negative for every nu, ~ sign depends on nu)\n");
  return 0;
}

int cmd_symmetric(const Options& opt) {
  if (opt.a_max < 1) throw std::domain_error("--a-max must be >= 1");
  const ConjectureScan scan = verify_conjecture(opt.which_criterion, opt.a_max, opt.alpha);
  std::printf("criterion %d vs quasi-periodic boundary, a <= %d, alpha = %g: %s (%lld cases)\n",
              opt.which_criterion, opt.a_max, opt.alpha,
              scan.confirmed ? "confirmed" : "COUNTEREXAMPLE", scan.cases_checked);
  if (scan.has_counterexample) {
    std::printf("first counterexample: a = %d, b = %d\n", scan.counterexample_a,
                scan.counterexample_b);
    return 3;
  }
  return 0;
}

int cmd_mlr(const Options& opt) {
  std::optional<std::string> response;
  if (!opt.response_column.empty()) response = opt.response_column;
  RegressionData data = io::read_regression_csv_file(opt.input, response);
  if (!opt.drop_column.empty()) {
    const auto it = std::find(data.names.begin(), data.names.end(), opt.drop_column);
    if (it == data.names.end()) {
      throw std::domain_error("no predictor named '" + opt.drop_column + "'");
    }
    data = drop_predictor(data, static_cast<int>(it - data.names.begin()));
  }
  const RegressionFit fit = ols_fit(data);
  const FtContradiction label = classify_contradiction(fit, opt.alpha);
  if (opt.format == "json") {
    nlohmann::ordered_json j = io::fit_to_json(fit);
    j["alpha"] = opt.alpha;
    j["case_label"] = to_string(label);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << io::render_fit_text(fit, data.response_name);
    std::cout << "\nF-test vs t-tests at alpha = " << opt.alpha << ": " << to_string(label)
              << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"One-way ANOVA and Tukey-Kramer tests, their disagreement cases, and the\n"
               "balanced constructions that produce them"};
  app.require_subcommand(1);
  Options opt;

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"text", "csv", "json"}));
  };

  CLI::App* compare = app.add_subcommand(
      "compare", "Run ANOVA, Tukey-Kramer and the pairwise follow-ups on a grouped CSV");
  compare->add_option("input", opt.input, "Long-format CSV (group,value)")->required();
  compare->add_option("--alpha", opt.alpha, "Significance level");
  add_format(compare);

  CLI::App* identity = app.add_subcommand(
      "identity", "Measure the worst deviation of Q^2(alpha,2,nu) from 2 F_crit(alpha,1,nu)");
  identity->add_option("--alpha-grid", opt.alpha_grid, "Alpha grid")->delimiter(',');
  identity->add_option("--nu-max", opt.nu_max, "Check nu = 1..nu-max");
  add_format(identity);

  CLI::App* search = app.add_subcommand(
      "search", "Construct a balanced sample on which the two tests disagree");
  search->add_option("--case", opt.family_case, "1: ANOVA rejects alone, 2: TK rejects alone")
      ->check(CLI::IsMember({1, 2}));
  search->add_option("--k", opt.k, "Number of groups")->required();
  search->add_option("--n", opt.n, "Total observations (multiple of k)")->required();
  search->add_option("--alpha", opt.alpha, "Significance level");
  search->add_option("--seed", opt.seed, "Generator seed");
  search->add_option("--out", opt.out_path, "Write the sample CSV here (report goes to stdout)");
  add_format(search);

  CLI::App* tables = app.add_subcommand("tables", "Reproduce the H sign table or the CR'/CR "
                                                  "monotonicity thresholds");
  tables->add_option("--which", opt.which_table, "3: H signs, 4: monotonicity thresholds")
      ->required()
      ->check(CLI::IsMember({3, 4}));
  tables->add_option("--k-max", opt.k_max, "Largest k for the sign table");
  tables->add_option("--nu-max", opt.table_nu_max, "Dense nu grid upper end");
  tables->add_option("--asymptotic-nu", opt.asymptotic_nu, "Extra large-nu proxy (0 disables)");
  tables->add_option("--l-max", opt.l_max, "Monotonicity scan range");

  CLI::App* symmetric = app.add_subcommand(
      "symmetric", "Scan a boundary criterion of the symmetric 2-vs-3 group designs");
  symmetric->add_option("--which", opt.which_criterion, "Criterion: 25 (ANOVA) or 26 (TK)")
      ->required()
      ->check(CLI::IsMember({25, 26}));
  symmetric->add_option("--a-max", opt.a_max, "Scan a = 1..a-max");
  symmetric->add_option("--alpha", opt.alpha, "Significance level");

  CLI::App* mlr = app.add_subcommand("mlr", "Least squares fit with per-slope t-tests and the "
                                            "overall F-test");
  mlr->add_option("input", opt.input, "CSV with named columns")->required();
  mlr->add_option("--alpha", opt.alpha, "Significance level");
  mlr->add_option("--drop", opt.drop_column, "Remove this predictor before fitting");
  mlr->add_option("--response", opt.response_column, "Response column (default: last)");
  add_format(mlr);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (compare->parsed()) return cmd_compare(opt);
    if (identity->parsed()) return cmd_identity(opt);
    if (search->parsed()) return cmd_search(opt);
    if (tables->parsed()) return cmd_tables(opt);
    if (symmetric->parsed()) return cmd_symmetric(opt);
    if (mlr->parsed()) return cmd_mlr(opt);
  } catch (const infeasible_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const numeric_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
