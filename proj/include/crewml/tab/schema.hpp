#pragma once

#include <map>
#include <string>
#include <vector>

#include "crewml/tab/table.hpp"

namespace crewml::tab {

enum class ColumnKind { Numeric, Categorical, BinaryFlag, Target };

const char* column_kind_name(ColumnKind kind);

struct ColumnSchema {
  std::string name;
  ColumnKind kind = ColumnKind::Numeric;
  // numeric stats (valid for Numeric columns; zero otherwise)
  double mean = 0.0;
  double std_dev = 0.0;   // sample std (n-1)
  double min = 0.0;
  double max = 0.0;
  double skewness = 0.0;  // Fisher-Pearson g1; 0 for constant columns
  double missing_fraction = 0.0;
  std::size_t cardinality = 0;  // distinct non-missing values
};

/// Text columns are categorical; integer-valued numeric columns with at most
/// 10 distinct values count as flags (categorical-like for perturbation);
/// everything else numeric. The target column gets kind Target.
std::vector<ColumnSchema> infer_schema(const Table& table,
                                       const std::string& target_name);

/// Class value -> fraction of rows, over non-missing target cells.
std::map<double, double> class_proportions(const Table& table,
                                           const std::string& target_name);

}  // namespace crewml::tab
