#include "crewml/ml/cv.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "crewml/ml/metrics.hpp"
#include "crewml/util/error.hpp"
#include "crewml/util/rng.hpp"
#include "crewml/util/text.hpp"

namespace crewml::ml {

std::vector<Hyperparams> expand_grid(const GridSpec& grid) {
  std::vector<Hyperparams> combos;
  if (grid.axes.empty()) return combos;
  for (const auto& [name, values] : grid.axes)
    if (values.empty()) return combos;
  std::vector<std::size_t> idx(grid.axes.size(), 0);
  while (true) {
    Hyperparams p;
    for (std::size_t a = 0; a < grid.axes.size(); ++a)
      p[grid.axes[a].first] = grid.axes[a].second[idx[a]];
    combos.push_back(std::move(p));
    // odometer: last axis fastest
    std::size_t a = grid.axes.size();
    while (a > 0) {
      --a;
      if (++idx[a] < grid.axes[a].second.size()) break;
      idx[a] = 0;
      if (a == 0) return combos;
    }
  }
}

std::vector<int> stratified_folds(const std::vector<double>& y, int folds,
                                  std::uint64_t seed) {
  if (folds < 2) throw Error(ErrorCode::BadValue, "folds must be >= 2");
  std::map<double, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < y.size(); ++i) by_class[y[i]].push_back(i);
  for (const auto& [value, rows] : by_class) {
    if (rows.size() < static_cast<std::size_t>(folds))
      throw Error(ErrorCode::TooFewPerClass,
                  "class " + format_metric(value) + " has " +
                      std::to_string(rows.size()) + " rows for " +
                      std::to_string(folds) + " folds");
  }
  Rng rng = Rng::substream(seed, "cv");
  std::vector<int> assignment(y.size(), 0);
  for (auto& [value, rows] : by_class) {
    rng.shuffle(rows);
    for (std::size_t i = 0; i < rows.size(); ++i)
      assignment[rows[i]] = static_cast<int>(i % static_cast<std::size_t>(folds));
  }
  return assignment;
}

namespace {

CvCell evaluate_combo(Family family, const Hyperparams& params,
                      const std::vector<double>& x, std::size_t n_rows,
                      std::size_t n_cols, const std::vector<double>& y,
                      const std::vector<std::string>& feature_names,
                      const std::vector<int>& fold_of, int folds,
                      std::uint64_t seed) {
  CvCell cell;
  cell.family = family;
  cell.params = params;
  for (int f = 0; f < folds; ++f) {
    std::vector<double> xt, xv, yt, yv;
    for (std::size_t i = 0; i < n_rows; ++i) {
      auto* xd = fold_of[i] == f ? &xv : &xt;
      auto* yd = fold_of[i] == f ? &yv : &yt;
      xd->insert(xd->end(), x.begin() + static_cast<std::ptrdiff_t>(i * n_cols),
                 x.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_cols));
      yd->push_back(y[i]);
    }
    Estimator model = fit(family, params, xt, yt.size(), n_cols, yt,
                          feature_names, seed);
    auto pred = predict(model, xv, yv.size());
    double correct = 0.0;
    for (std::size_t i = 0; i < yv.size(); ++i)
      if (pred[i] == yv[i]) correct += 1.0;
    cell.fold_accuracy.push_back(correct / static_cast<double>(yv.size()));
  }
  double sum = 0.0;
  for (double a : cell.fold_accuracy) sum += a;
  cell.mean_accuracy = sum / static_cast<double>(cell.fold_accuracy.size());
  return cell;
}

std::string describe_params(const Hyperparams& params) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& [k, v] : params) {
    if (!first) out << ", ";
    out << "'" << k << "': " << format_metric(v);
    first = false;
  }
  out << "}";
  return out.str();
}

}  // namespace

SelectionResult grid_search_select(const std::vector<GridSpec>& candidates,
                                   const std::vector<double>& x,
                                   std::size_t n_rows, std::size_t n_cols,
                                   const std::vector<double>& y,
                                   const std::vector<std::string>& feature_names,
                                   int folds, std::uint64_t seed) {
  if (candidates.empty())
    throw Error(ErrorCode::EmptyGrid, "no candidate families");
  auto fold_of = stratified_folds(y, folds, seed);

  SelectionResult result;
  bool have_best = false;
  for (const GridSpec& grid : candidates) {
    for (const Hyperparams& params : expand_grid(grid)) {
      CvCell cell = evaluate_combo(grid.family, params, x, n_rows, n_cols, y,
                                   feature_names, fold_of, folds, seed);
      if (!have_best || cell.mean_accuracy > result.mean_accuracy) {
        result.family = cell.family;
        result.params = cell.params;
        result.mean_accuracy = cell.mean_accuracy;
        have_best = true;
      }
      result.table.push_back(std::move(cell));
    }
  }
  if (!have_best) throw Error(ErrorCode::EmptyGrid, "all candidate grids empty");

  std::ostringstream why;
  why << "Selected " << family_name(result.family) << " with "
      << describe_params(result.params) << " by stratified " << folds
      << "-fold cross-validation (mean accuracy "
      << format_fixed(result.mean_accuracy, 4) << " over "
      << result.table.size() << " evaluated configurations).";
  result.rationale = why.str();
  return result;
}

SelectionResult tune_hyperparameters(const GridSpec& grid,
                                     const std::vector<double>& x,
                                     std::size_t n_rows, std::size_t n_cols,
                                     const std::vector<double>& y,
                                     const std::vector<std::string>& feature_names,
                                     int folds, std::uint64_t seed) {
  if (expand_grid(grid).empty())
    throw Error(ErrorCode::EmptyGrid,
                std::string("empty grid for ") + family_name(grid.family));
  return grid_search_select({grid}, x, n_rows, n_cols, y, feature_names, folds,
                            seed);
}

}  // namespace crewml::ml
