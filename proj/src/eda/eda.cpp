#include "crewml/eda/eda.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "crewml/kernels/kernels.hpp"
#include "crewml/util/error.hpp"
#include "crewml/util/text.hpp"

namespace crewml::eda {

using tab::Column;
using tab::ColumnKind;

namespace {

// linear-interpolation quantile on sorted values
double quantile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return 0.0;
  if (sorted.size() == 1) return sorted[0];
  double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  std::size_t lo = static_cast<std::size_t>(std::floor(h));
  std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::size_t iqr_outlier_count(const Column& col) {
  std::vector<double> values;
  values.reserve(col.num.size());
  for (std::size_t r = 0; r < col.num.size(); ++r)
    if (!col.is_missing(r)) values.push_back(col.num[r]);
  if (values.size() < 4) return 0;
  std::sort(values.begin(), values.end());
  double q1 = quantile(values, 0.25);
  double q3 = quantile(values, 0.75);
  double iqr = q3 - q1;
  double lo = q1 - 1.5 * iqr;
  double hi = q3 + 1.5 * iqr;
  std::size_t n = 0;
  for (double v : values)
    if (v < lo || v > hi) ++n;
  return n;
}

std::string quoted_list(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += "'" + names[i] + "'";
  }
  return out;
}

}  // namespace

EdaReport run_eda(const tab::Table& table, const std::string& target,
                  const EdaOptions& options) {
  EdaReport report;
  report.n_rows = table.n_rows();
  report.n_cols = table.n_cols();
  report.target = target;
  report.stats = tab::infer_schema(table, target);
  report.imbalance = tab::class_proportions(table, target);

  for (const auto& s : report.stats) {
    if (s.missing_fraction > 0.0) report.missing[s.name] = s.missing_fraction;
    if (s.kind == ColumnKind::Categorical)
      report.categorical_needing_encoding.push_back(s.name);
    if (s.kind == ColumnKind::Numeric && s.skewness > options.skew_threshold)
      report.skewed_positive.push_back(s.name);
  }

  std::vector<std::vector<double>> columns;
  std::vector<std::vector<std::uint8_t>> missing;
  for (const auto& s : report.stats) {
    if (s.kind != ColumnKind::Numeric) continue;
    const Column& col = table.column(table.require_column(s.name));
    report.numeric_columns.push_back(s.name);
    columns.push_back(col.num);
    missing.push_back(col.missing);
    report.outlier_counts[s.name] = iqr_outlier_count(col);
  }
  report.correlation = kernels::pearson_matrix(columns, missing);

  std::size_t m = report.numeric_columns.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (std::abs(report.correlation[i * m + j]) >= options.high_corr_threshold)
        report.high_correlations.emplace_back(report.numeric_columns[i],
                                              report.numeric_columns[j]);
  return report;
}

std::string render_eda_summary(const EdaReport& report) {
  std::ostringstream out;
  out << "## Exploratory Data Analysis Report\n\n";

  out << "## Dataset Overview\n";
  out << "- The dataset contains " << report.n_rows << " rows and "
      << report.n_cols << " columns.\n";
  out << "- The target variable is the '" << report.target << "' column.\n";
  if (report.missing.empty()) {
    out << "- 0 features have missing values.\n";
  } else {
    out << "- " << report.missing.size() << " features have missing values: ";
    bool first = true;
    for (const auto& s : report.stats) {
      auto it = report.missing.find(s.name);
      if (it == report.missing.end()) continue;
      if (!first) out << ", ";
      out << "'" << s.name << "' (" << format_fixed(it->second * 100.0, 2)
          << "%)";
      first = false;
    }
    out << ".\n";
  }
  double majority_fraction = 0.0;
  double majority_value = 0.0;
  for (const auto& [value, fraction] : report.imbalance) {
    if (fraction > majority_fraction) {
      majority_fraction = fraction;
      majority_value = value;
    }
  }
  if (majority_fraction >= 0.6) {
    out << "- The dataset is highly imbalanced with '" << report.target
        << "' majority class " << format_stat_bound(majority_value) << " at "
        << format_fixed(majority_fraction * 100.0, 2) << "%.\n";
  } else {
    out << "- Class proportions:";
    bool first = true;
    for (const auto& [value, fraction] : report.imbalance) {
      out << (first ? " " : ", ") << format_stat_bound(value) << ": "
          << format_fixed(fraction * 100.0, 2) << "%";
      first = false;
    }
    out << ".\n";
  }
  out << "\n";

  out << "## Feature Analysis\n";
  std::vector<std::string> flags;
  for (const auto& s : report.stats)
    if (s.kind == ColumnKind::BinaryFlag) flags.push_back(s.name);
  out << "- Numeric Features: " << quoted_list(report.numeric_columns) << ".\n";
  out << "- Categorical Features: "
      << quoted_list(report.categorical_needing_encoding) << ".\n";
  if (!flags.empty())
    out << "- Flag Features (numeric, treated as categorical): "
        << quoted_list(flags) << ".\n";
  out << "- Categorical features that need label encoding: "
      << quoted_list(report.categorical_needing_encoding) << ".\n";
  out << "- Positively skewed features: " << quoted_list(report.skewed_positive)
      << ".\n";
  std::vector<std::string> outlier_lines;
  for (const auto& s : report.stats) {
    auto it = report.outlier_counts.find(s.name);
    if (it != report.outlier_counts.end() && it->second > 0)
      outlier_lines.push_back("'" + s.name + "' (" +
                              std::to_string(it->second) + ")");
  }
  out << "- Outliers per feature (IQR rule):";
  if (outlier_lines.empty()) {
    out << " none detected.\n";
  } else {
    for (std::size_t i = 0; i < outlier_lines.size(); ++i)
      out << (i ? ", " : " ") << outlier_lines[i];
    out << ".\n";
  }
  out << "\n";

  out << "## Descriptive Statistics\n";
  for (const auto& s : report.stats) {
    if (s.kind != ColumnKind::Numeric) continue;
    out << "- '" << s.name << "': Mean=" << format_fixed(s.mean, 2)
        << ", Std=" << format_fixed(s.std_dev, 2)
        << ", Min=" << format_stat_bound(s.min)
        << ", Max=" << format_stat_bound(s.max) << "\n";
  }
  out << "\n";

  out << "## Correlation Analysis\n";
  if (report.high_correlations.empty()) {
    out << "- No highly correlated feature pairs (|r| >= 0.8).\n";
  } else {
    for (const auto& [a, b] : report.high_correlations)
      out << "- '" << a << "' is highly correlated with '" << b << "'.\n";
  }
  return out.str();
}

std::string eda_report_json(const EdaReport& report) {
  nlohmann::json j;
  j["shape"] = {report.n_rows, report.n_cols};
  j["target"] = report.target;
  j["missing"] = report.missing;
  j["numeric_columns"] = report.numeric_columns;
  j["correlation"] = report.correlation;
  nlohmann::json stats = nlohmann::json::array();
  for (const auto& s : report.stats) {
    stats.push_back({{"name", s.name},
                     {"kind", tab::column_kind_name(s.kind)},
                     {"mean", s.mean},
                     {"std", s.std_dev},
                     {"min", s.min},
                     {"max", s.max},
                     {"skewness", s.skewness},
                     {"missing_fraction", s.missing_fraction},
                     {"cardinality", s.cardinality}});
  }
  j["stats"] = stats;
  j["skewed_positive"] = report.skewed_positive;
  nlohmann::json imb = nlohmann::json::object();
  for (const auto& [value, fraction] : report.imbalance)
    imb[format_stat_bound(value)] = fraction;
  j["imbalance"] = imb;
  j["outlier_counts"] = report.outlier_counts;
  j["categorical_needing_encoding"] = report.categorical_needing_encoding;
  return j.dump(2);
}

}  // namespace crewml::eda
