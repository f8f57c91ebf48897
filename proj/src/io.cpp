#include "anovatk/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace anovatk::io {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_value(const std::string& field, int line_no) {
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(field, &consumed);
  } catch (const std::exception&) {
    throw std::domain_error("csv line " + std::to_string(line_no) + ": '" + field +
                            "' is not a number");
  }
  if (consumed != field.size() || !std::isfinite(value)) {
    throw std::domain_error("csv line " + std::to_string(line_no) + ": '" + field +
                            "' is not a finite number");
  }
  return value;
}

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string format_sig(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

void append_row(std::string& out, const std::vector<std::string>& cells,
                const std::vector<int>& widths) {
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const int width = widths[c];
    std::string cell = cells[c];
    if (static_cast<int>(cell.size()) < width) {
      cell = (c == 0 ? "" : std::string(width - cell.size(), ' ')) + cell +
             (c == 0 ? std::string(width - cell.size(), ' ') : "");
    }
    out += cell;
    if (c + 1 < cells.size()) out += "  ";
  }
  out += '\n';
}

std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<int> widths;
  for (const auto& row : rows) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) {
      widths[c] = std::max(widths[c], static_cast<int>(row[c].size()));
    }
  }
  std::string out;
  for (const auto& row : rows) append_row(out, row, widths);
  return out;
}

}  // namespace

GroupedSample read_grouped_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::domain_error("csv: empty input");
  const auto header = split_csv_line(line);
  if (header.size() != 2 || header[0] != "group" || header[1] != "value") {
    throw std::domain_error("csv: expected header 'group,value'");
  }
  std::vector<std::string> labels;
  std::map<std::string, std::size_t> index;
  std::vector<std::vector<double>> groups;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 2) {
      throw std::domain_error("csv line " + std::to_string(line_no) + ": expected 2 fields");
    }
    if (fields[0].empty()) {
      throw std::domain_error("csv line " + std::to_string(line_no) + ": empty group label");
    }
    auto [it, inserted] = index.try_emplace(fields[0], groups.size());
    if (inserted) {
      labels.push_back(fields[0]);
      groups.emplace_back();
    }
    groups[it->second].push_back(parse_value(fields[1], line_no));
  }
  if (groups.size() < 2) throw std::domain_error("csv: need at least two distinct groups");
  return GroupedSample(std::move(groups), std::move(labels));
}

GroupedSample read_grouped_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::domain_error("cannot open '" + path + "'");
  return read_grouped_csv(in);
}

void write_grouped_csv(std::ostream& out, const GroupedSample& s) {
  out << "group,value\n";
  for (int j = 0; j < s.group_count(); ++j) {
    for (double v : s.group(j)) {
      out << s.label(j) << ',' << format_full(v) << '\n';
    }
  }
}

RegressionData read_regression_csv(std::istream& in, const std::optional<std::string>& response) {
  std::string line;
  if (!std::getline(in, line)) throw std::domain_error("csv: empty input");
  const auto header = split_csv_line(line);
  if (header.size() < 2) throw std::domain_error("csv: need at least two columns");
  for (const auto& name : header) {
    if (name.empty()) throw std::domain_error("csv: empty column name in header");
  }
  std::vector<std::vector<double>> columns(header.size());
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw std::domain_error("csv line " + std::to_string(line_no) + ": expected " +
                              std::to_string(header.size()) + " fields");
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      columns[c].push_back(parse_value(fields[c], line_no));
    }
  }

  std::size_t response_idx = header.size() - 1;
  if (response) {
    const auto it = std::find(header.begin(), header.end(), *response);
    if (it == header.end()) {
      throw std::domain_error("csv: no column named '" + *response + "'");
    }
    response_idx = static_cast<std::size_t>(it - header.begin());
  }

  RegressionData data;
  data.response_name = header[response_idx];
  data.response = std::move(columns[response_idx]);
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c == response_idx) continue;
    data.names.push_back(header[c]);
    data.columns.push_back(std::move(columns[c]));
  }
  return data;
}

RegressionData read_regression_csv_file(const std::string& path,
                                        const std::optional<std::string>& response) {
  std::ifstream in(path);
  if (!in) throw std::domain_error("cannot open '" + path + "'");
  return read_regression_csv(in, response);
}

std::string render_anova_text(const AnovaTable& t) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"", "Df", "Sum Sq", "Mean Sq", "F value", "Pr(>F)"});
  rows.push_back({"group", std::to_string(t.df1), format_fixed(t.ss_tr, 3),
                  format_fixed(t.ms_tr, 3), format_sig(t.f_stat, 6), format_sig(t.p_value, 5)});
  rows.push_back({"Residuals", std::to_string(t.df2), format_fixed(t.sse, 3),
                  format_fixed(t.mse, 3), "", ""});
  return render_table(rows);
}

std::string render_tk_text(const std::vector<PairwiseComparison>& rows,
                           const std::vector<std::string>& labels) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"pair", "diff", "lwr", "upr", "p adj"});
  for (const auto& row : rows) {
    cells.push_back({labels[row.i] + "-" + labels[row.j], format_sig(row.diff, 9),
                     format_sig(row.lwr, 9), format_sig(row.upr, 9), format_sig(row.p_adj, 7)});
  }
  return render_table(cells);
}

std::string render_report_text(const ContradictionReport& report,
                               const std::vector<std::string>& labels) {
  std::string out;
  out += "One-way ANOVA (alpha = " + format_sig(report.alpha, 6) + ")\n";
  out += render_anova_text(report.anova);
  out += report.anova_rejects ? "ANOVA rejects equality of all group means.\n"
                              : "ANOVA does not reject equality of all group means.\n";
  out += "\nTukey-Kramer pairwise comparisons\n";
  out += render_tk_text(report.tk_rows, labels);
  out += "\nJoint verdict: ";
  out += to_string(report.case_label);
  out += '\n';
  if (!report.restricted.empty()) {
    out += "\nTwo-group follow-up on rejected pairs\n";
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"pair", "restricted ANOVA p", "pairwise TK p"});
    for (const auto& rt : report.restricted) {
      cells.push_back({labels[rt.i] + "-" + labels[rt.j], format_sig(rt.anova_p, 7),
                       format_sig(rt.modified_tk_p, 7)});
    }
    out += render_table(cells);
  }
  if (report.contradiction_flag) {
    out += "\nContradiction: the pairwise tests reject ";
    for (std::size_t idx = 0; idx < report.contradiction_pairs.size(); ++idx) {
      const auto& [hi, lo] = report.contradiction_pairs[idx];
      if (idx) out += ", ";
      out += labels[hi] + "-" + labels[lo];
    }
    out += " while ANOVA keeps the joint equality.\n";
  }
  return out;
}

std::string render_report_csv(const ContradictionReport& report,
                              const std::vector<std::string>& labels) {
  std::string out;
  out += "section,pair,df1,df2,statistic,p,reject\n";
  out += "anova,," + std::to_string(report.anova.df1) + ',' + std::to_string(report.anova.df2) +
         ',' + format_full(report.anova.f_stat) + ',' + format_full(report.anova.p_value) + ',' +
         (report.anova_rejects ? "1" : "0") + '\n';
  for (const auto& row : report.tk_rows) {
    out += "tukey," + labels[row.i] + "-" + labels[row.j] + ",,," + format_full(row.diff) + ',' +
           format_full(row.p_adj) + ',' + (row.reject ? "1" : "0") + '\n';
  }
  for (const auto& rt : report.restricted) {
    out += "restricted," + labels[rt.i] + "-" + labels[rt.j] + ",,,," +
           format_full(rt.anova_p) + ',' + (rt.anova_rejects ? "1" : "0") + '\n';
  }
  out += std::string("verdict,,,,,,") + to_string(report.case_label) + '\n';
  return out;
}

std::string render_fit_text(const RegressionFit& fit, const std::string& response_name) {
  std::string out = "Least squares fit, response " + response_name + "\n\n";
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"Coefficients", "Estimate", "Std. Error", "t value", "Pr(>|t|)"});
  for (const auto& coef : fit.coefficients) {
    cells.push_back({coef.name, format_sig(coef.estimate, 9), format_sig(coef.std_error, 9),
                     format_sig(coef.t_value, 8), format_sig(coef.p_value, 7)});
  }
  out += render_table(cells);
  out += "\nResidual standard error: " + format_sig(fit.residual_se, 9) + " on " +
         std::to_string(fit.residual_df) + " degrees of freedom\n";
  out += "Multiple R-squared: " + format_sig(fit.r_squared, 9) +
         ", Adjusted R-squared: " + format_sig(fit.adj_r_squared, 9) + "\n";
  out += "F-statistic: " + format_sig(fit.f_stat, 9) + " on " + std::to_string(fit.f_df1) +
         " and " + std::to_string(fit.f_df2) +
         " DF, p-value: " + format_sig(fit.f_p_value, 9) + "\n";
  return out;
}

nlohmann::ordered_json report_to_json(const ContradictionReport& report,
                                      const std::vector<std::string>& labels) {
  nlohmann::ordered_json j;
  j["alpha"] = report.alpha;
  j["anova"] = {{"df1", report.anova.df1},
                {"df2", report.anova.df2},
                {"ss_tr", report.anova.ss_tr},
                {"sse", report.anova.sse},
                {"ms_tr", report.anova.ms_tr},
                {"mse", report.anova.mse},
                {"f_stat", report.anova.f_stat},
                {"p_value", report.anova.p_value},
                {"grand_mean", report.anova.grand_mean},
                {"reject", report.anova_rejects}};
  j["tukey"] = nlohmann::ordered_json::array();
  for (const auto& row : report.tk_rows) {
    j["tukey"].push_back({{"pair", labels[row.i] + "-" + labels[row.j]},
                          {"diff", row.diff},
                          {"critical_range", row.critical_range},
                          {"lwr", row.lwr},
                          {"upr", row.upr},
                          {"p_adj", row.p_adj},
                          {"reject", row.reject}});
  }
  j["restricted"] = nlohmann::ordered_json::array();
  for (const auto& rt : report.restricted) {
    j["restricted"].push_back({{"pair", labels[rt.i] + "-" + labels[rt.j]},
                               {"anova_p", rt.anova_p},
                               {"modified_tk_p", rt.modified_tk_p},
                               {"anova_reject", rt.anova_rejects},
                               {"tk_reject", rt.tk_rejects}});
  }
  j["case_label"] = to_string(report.case_label);
  j["contradiction"] = report.contradiction_flag;
  return j;
}

nlohmann::ordered_json fit_to_json(const RegressionFit& fit) {
  nlohmann::ordered_json j;
  j["coefficients"] = nlohmann::ordered_json::array();
  for (const auto& coef : fit.coefficients) {
    j["coefficients"].push_back({{"name", coef.name},
                                 {"estimate", coef.estimate},
                                 {"std_error", coef.std_error},
                                 {"t_value", coef.t_value},
                                 {"p_value", coef.p_value}});
  }
  j["residual_se"] = fit.residual_se;
  j["residual_df"] = fit.residual_df;
  j["r_squared"] = fit.r_squared;
  j["adj_r_squared"] = fit.adj_r_squared;
  j["f_stat"] = fit.f_stat;
  j["f_p_value"] = fit.f_p_value;
  j["f_df1"] = fit.f_df1;
  j["f_df2"] = fit.f_df2;
  return j;
}

}  // namespace anovatk::io
