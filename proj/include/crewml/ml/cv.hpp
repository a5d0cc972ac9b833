#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "crewml/ml/estimator.hpp"

namespace crewml::ml {

/// Hyperparameter grid for one family: axes expand as a cartesian product in
/// declared order (first axis slowest).
struct GridSpec {
  Family family = Family::LogisticRegression;
  std::vector<std::pair<std::string, std::vector<double>>> axes;
};

std::vector<Hyperparams> expand_grid(const GridSpec& grid);

struct CvCell {
  Family family = Family::LogisticRegression;
  Hyperparams params;
  std::vector<double> fold_accuracy;
  double mean_accuracy = 0.0;
};

struct SelectionResult {
  Family family = Family::LogisticRegression;
  Hyperparams params;
  double mean_accuracy = 0.0;
  std::vector<CvCell> table;
  std::string rationale;
};

/// Fold assignment per row (stratified, substream "cv"). Throws
/// TooFewPerClass when any class has fewer rows than folds.
std::vector<int> stratified_folds(const std::vector<double>& y, int folds,
                                  std::uint64_t seed);

/// Mean CV accuracy per (family, combo); argmax wins, ties broken by
/// candidate order then combo order.
SelectionResult grid_search_select(const std::vector<GridSpec>& candidates,
                                   const std::vector<double>& x,
                                   std::size_t n_rows, std::size_t n_cols,
                                   const std::vector<double>& y,
                                   const std::vector<std::string>& feature_names,
                                   int folds, std::uint64_t seed);

/// Same machinery restricted to one family. Throws EmptyGrid.
SelectionResult tune_hyperparameters(const GridSpec& grid,
                                     const std::vector<double>& x,
                                     std::size_t n_rows, std::size_t n_cols,
                                     const std::vector<double>& y,
                                     const std::vector<std::string>& feature_names,
                                     int folds, std::uint64_t seed);

}  // namespace crewml::ml
