#pragma once

#include <string>
#include <vector>

#include "crewml/tab/table.hpp"

namespace crewml::ml {

/// Feature matrix + target extracted from a fully numeric, fully observed
/// table (the post-feature-engineering state).
struct Dataset {
  std::vector<double> x;  // row-major
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<double> y;
  std::vector<std::string> feature_names;
};

Dataset dataset_from_table(const tab::Table& table, const std::string& target);

}  // namespace crewml::ml
