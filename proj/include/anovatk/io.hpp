#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "anovatk/anova.hpp"
#include "anovatk/mlr.hpp"
#include "anovatk/report.hpp"

namespace anovatk::io {

/// Long-format grouped CSV: header "group,value", one observation per row.
GroupedSample read_grouped_csv(std::istream& in);
GroupedSample read_grouped_csv_file(const std::string& path);
void write_grouped_csv(std::ostream& out, const GroupedSample& s);

/// Regression CSV: named numeric columns; the response is the named column
/// or, when none is given, the last one.
RegressionData read_regression_csv(std::istream& in,
                                   const std::optional<std::string>& response = std::nullopt);
RegressionData read_regression_csv_file(const std::string& path,
                                        const std::optional<std::string>& response = std::nullopt);

std::string render_anova_text(const AnovaTable& t);
std::string render_tk_text(const std::vector<PairwiseComparison>& rows,
                           const std::vector<std::string>& labels);
std::string render_report_text(const ContradictionReport& report,
                               const std::vector<std::string>& labels);
std::string render_report_csv(const ContradictionReport& report,
                              const std::vector<std::string>& labels);
std::string render_fit_text(const RegressionFit& fit, const std::string& response_name);

nlohmann::ordered_json report_to_json(const ContradictionReport& report,
                                      const std::vector<std::string>& labels);
nlohmann::ordered_json fit_to_json(const RegressionFit& fit);

}  // namespace anovatk::io
