#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "crewml/tab/schema.hpp"
#include "crewml/tab/table.hpp"

namespace crewml::eda {

struct EdaReport {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::string target;
  std::map<std::string, double> missing;  // column -> fraction (only > 0)
  std::vector<std::string> numeric_columns;  // correlation axis order
  std::vector<double> correlation;           // row-major over numeric_columns
  std::vector<tab::ColumnSchema> stats;
  std::vector<std::string> skewed_positive;  // skewness > threshold
  std::map<double, double> imbalance;        // class -> fraction
  std::map<std::string, std::size_t> outlier_counts;  // IQR rule
  std::vector<std::string> categorical_needing_encoding;
  std::vector<std::pair<std::string, std::string>> high_correlations;  // |r| >= 0.8

  double correlation_at(std::size_t i, std::size_t j) const {
    return correlation[i * numeric_columns.size() + j];
  }
};

struct EdaOptions {
  double skew_threshold = 0.5;
  double high_corr_threshold = 0.8;
};

EdaReport run_eda(const tab::Table& table, const std::string& target,
                  const EdaOptions& options = {});

/// Fixed section order: Dataset Overview, Feature Analysis, Descriptive
/// Statistics, Correlation Analysis.
std::string render_eda_summary(const EdaReport& report);

/// Structured JSON mirror of the report (written next to the rendered text).
std::string eda_report_json(const EdaReport& report);

}  // namespace crewml::eda
