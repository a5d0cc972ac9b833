#include "crewml/tab/schema.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "crewml/util/error.hpp"

namespace crewml::tab {

const char* column_kind_name(ColumnKind kind) {
  switch (kind) {
    case ColumnKind::Numeric: return "numeric";
    case ColumnKind::Categorical: return "categorical";
    case ColumnKind::BinaryFlag: return "binary-flag";
    case ColumnKind::Target: return "target";
  }
  return "unknown";
}

namespace {

constexpr std::size_t kFlagCardinality = 10;

void numeric_stats(const Column& col, ColumnSchema& s) {
  double sum = 0.0;
  std::size_t n = 0;
  double mn = 0.0, mx = 0.0;
  bool first = true;
  for (std::size_t r = 0; r < col.num.size(); ++r) {
    if (col.is_missing(r)) continue;
    double v = col.num[r];
    sum += v;
    ++n;
    if (first) {
      mn = mx = v;
      first = false;
    } else {
      mn = std::min(mn, v);
      mx = std::max(mx, v);
    }
  }
  if (n == 0) return;
  double mean = sum / static_cast<double>(n);
  double m2 = 0.0, m3 = 0.0;
  for (std::size_t r = 0; r < col.num.size(); ++r) {
    if (col.is_missing(r)) continue;
    double d = col.num[r] - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  s.mean = mean;
  s.min = mn;
  s.max = mx;
  s.std_dev = n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1)) : 0.0;
  double pm2 = m2 / static_cast<double>(n);
  if (pm2 > 0.0) {
    s.skewness = (m3 / static_cast<double>(n)) / std::pow(pm2, 1.5);
  } else {
    s.skewness = 0.0;
  }
}

std::size_t distinct_count(const Column& col, bool& all_integral) {
  all_integral = true;
  if (col.numeric) {
    std::set<double> seen;
    for (std::size_t r = 0; r < col.num.size(); ++r) {
      if (col.is_missing(r)) continue;
      double v = col.num[r];
      if (v != std::floor(v)) all_integral = false;
      seen.insert(v);
    }
    return seen.size();
  }
  std::set<std::string> seen;
  for (std::size_t r = 0; r < col.txt.size(); ++r) {
    if (col.is_missing(r)) continue;
    seen.insert(col.txt[r]);
  }
  return seen.size();
}

}  // namespace

std::vector<ColumnSchema> infer_schema(const Table& table,
                                       const std::string& target_name) {
  table.require_column(target_name);
  std::vector<ColumnSchema> out;
  out.reserve(table.n_cols());
  for (const auto& col : table.columns()) {
    ColumnSchema s;
    s.name = col.name;
    std::size_t n = table.n_rows();
    s.missing_fraction =
        n == 0 ? 0.0
               : static_cast<double>(col.missing_count()) / static_cast<double>(n);
    bool all_integral = true;
    s.cardinality = distinct_count(col, all_integral);
    if (col.name == target_name) {
      s.kind = ColumnKind::Target;
    } else if (!col.numeric) {
      s.kind = ColumnKind::Categorical;
    } else if (all_integral && s.cardinality <= kFlagCardinality) {
      s.kind = ColumnKind::BinaryFlag;
    } else {
      s.kind = ColumnKind::Numeric;
    }
    if (col.numeric) numeric_stats(col, s);
    out.push_back(std::move(s));
  }
  return out;
}

std::map<double, double> class_proportions(const Table& table,
                                           const std::string& target_name) {
  std::size_t t = table.require_column(target_name);
  const Column& col = table.column(t);
  if (!col.numeric)
    throw Error(ErrorCode::NonBinaryTarget,
                "target '" + target_name + "' is not numeric");
  std::map<double, std::size_t> counts;
  std::size_t n = 0;
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    if (col.is_missing(r)) continue;
    ++counts[col.num[r]];
    ++n;
  }
  std::map<double, double> out;
  for (const auto& [value, count] : counts)
    out[value] = n == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(n);
  return out;
}

}  // namespace crewml::tab
