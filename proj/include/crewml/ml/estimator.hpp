#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace crewml::ml {

enum class Family {
  LogisticRegression,
  DecisionTree,
  RandomForest,
  GradientBoosting,
};

const char* family_name(Family family);
std::optional<Family> family_from_name(const std::string& name);

/// name -> value map; unknown keys for the family are rejected at fit time.
using Hyperparams = std::map<std::string, double>;

struct TreeNode {
  int feature = -1;     // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;   // leaf: class-1 fraction (trees) or weight (boosting)
};

struct Tree {
  std::vector<TreeNode> nodes;
  double predict_row(const double* row) const;
};

/// Fitted model. One struct for every family keeps persistence and the
/// importance dispatch in one place; family-specific state is simply unused
/// by the other families.
struct Estimator {
  Family family = Family::LogisticRegression;
  Hyperparams hyperparams;
  std::vector<std::string> feature_names;
  std::uint64_t seed = 0;

  // logistic regression (features standardized internally)
  std::vector<double> lr_weights;
  double lr_intercept = 0.0;
  std::vector<double> lr_means;
  std::vector<double> lr_stds;

  // tree families
  std::vector<Tree> trees;
  double base_score = 0.0;       // boosting prior log-odds
  double learning_rate = 0.0;    // boosting shrinkage

  // total split gain per feature, accumulated during fit
  std::vector<double> split_gain;

  std::size_t n_features() const { return feature_names.size(); }
};

/// Binary-classification fit. y must contain only 0/1; X row-major with no
/// missing values. All randomness is drawn from named substreams of `seed`.
Estimator fit(Family family, const Hyperparams& params,
              const std::vector<double>& x, std::size_t n_rows,
              std::size_t n_cols, const std::vector<double>& y,
              const std::vector<std::string>& feature_names,
              std::uint64_t seed);

/// Probability of class 1 per row, in [0, 1].
std::vector<double> predict_scores(const Estimator& model,
                                   const std::vector<double>& x,
                                   std::size_t n_rows);
/// Hard labels: score >= 0.5 -> 1.
std::vector<double> predict(const Estimator& model, const std::vector<double>& x,
                            std::size_t n_rows);

/// Versioned JSON text artifact. load(save(m)) predicts identically.
void save_model(const Estimator& model, const std::string& path);
Estimator load_model(const std::string& path);
std::string model_to_json(const Estimator& model);
Estimator model_from_json(const std::string& text);

}  // namespace crewml::ml
