#include "crewml/ml/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>

#include <json.hpp>

#include "crewml/kernels/kernels.hpp"
#include "crewml/util/error.hpp"
#include "crewml/util/parallel.hpp"
#include "crewml/util/rng.hpp"
#include "crewml/util/text.hpp"

namespace crewml::ml {

const char* family_name(Family family) {
  switch (family) {
    case Family::LogisticRegression: return "logistic-regression";
    case Family::DecisionTree: return "decision-tree";
    case Family::RandomForest: return "random-forest";
    case Family::GradientBoosting: return "gradient-boosting";
  }
  return "unknown";
}

std::optional<Family> family_from_name(const std::string& name) {
  if (name == "logistic-regression") return Family::LogisticRegression;
  if (name == "decision-tree") return Family::DecisionTree;
  if (name == "random-forest") return Family::RandomForest;
  if (name == "gradient-boosting") return Family::GradientBoosting;
  return std::nullopt;
}

double Tree::predict_row(const double* row) const {
  int i = 0;
  while (nodes[static_cast<std::size_t>(i)].feature >= 0) {
    const TreeNode& n = nodes[static_cast<std::size_t>(i)];
    i = row[n.feature] < n.threshold ? n.left : n.right;
  }
  return nodes[static_cast<std::size_t>(i)].value;
}

namespace {

constexpr double kEps = 1e-12;
constexpr double kMinGain = 1e-12;

inline double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

void check_hyperparams(Family family, const Hyperparams& params) {
  auto allowed = [&]() -> std::vector<const char*> {
    switch (family) {
      case Family::LogisticRegression: return {"l2", "max_iter", "tol"};
      case Family::DecisionTree: return {"max_depth"};
      case Family::RandomForest: return {"n_estimators", "max_depth"};
      case Family::GradientBoosting:
        return {"learning_rate", "max_depth", "n_estimators"};
    }
    return {};
  }();
  for (const auto& [key, value] : params) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok)
      throw Error(ErrorCode::UnknownHyperparam,
                  std::string(family_name(family)) + " does not accept '" +
                      key + "'");
    (void)value;
  }
}

double hp(const Hyperparams& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

// ---------------------------------------------------------------------------
// tree growing: presorted feature order + stable partition per level
// ---------------------------------------------------------------------------

// Split criteria share one accumulator shape: (a, b) is (weighted positives,
// weight) for Gini and (grad sum, hess sum) for the boosting objective.
struct Acc {
  double a = 0.0;
  double b = 0.0;
};

enum class Criterion { Gini, Newton };

inline double criterion_score(Criterion c, const Acc& acc) {
  if (c == Criterion::Gini) {
    // negative weighted impurity; larger is better
    if (acc.b <= 0.0) return 0.0;
    double p = acc.a / acc.b;
    return -acc.b * (1.0 - p * p - (1.0 - p) * (1.0 - p));
  }
  return acc.a * acc.a / (acc.b + kEps);
}

inline double leaf_value(Criterion c, const Acc& acc) {
  if (c == Criterion::Gini) return acc.b > 0.0 ? acc.a / acc.b : 0.0;
  return -acc.a / (acc.b + kEps);
}

struct BestSplit {
  double gain = 0.0;
  int feature = -1;
  double threshold = 0.0;
};

struct BuildInput {
  const std::vector<double>* x = nullptr;
  std::size_t n_cols = 0;
  // per-row criterion stats (already weighted)
  const std::vector<double>* stat_a = nullptr;
  const std::vector<double>* stat_b = nullptr;
  const std::vector<double>* row_count = nullptr;  // bootstrap multiplicity
  Criterion criterion = Criterion::Gini;
  int max_depth = 5;
  std::size_t m_try = 0;  // 0 = all features
  bool parallel_features = false;
};

struct PendingNode {
  int tree_index;
  int depth;
  Acc total;
  double count;
  std::vector<std::vector<std::int32_t>> sorted;  // per feature, node rows
};

// best split for one feature list; rows are presorted by the feature value
BestSplit scan_feature(const BuildInput& in, int feature,
                       const std::vector<std::int32_t>& rows,
                       const Acc& total) {
  BestSplit best;
  const std::vector<double>& x = *in.x;
  Acc left;
  double prev_value = 0.0;
  bool have_prev = false;
  for (std::int32_t row : rows) {
    double value = x[static_cast<std::size_t>(row) * in.n_cols +
                     static_cast<std::size_t>(feature)];
    if (have_prev && value > prev_value && left.b > 0.0 &&
        total.b - left.b > 0.0) {
      Acc right{total.a - left.a, total.b - left.b};
      double gain = criterion_score(in.criterion, left) +
                    criterion_score(in.criterion, right) -
                    criterion_score(in.criterion, total);
      if (gain > best.gain) {
        best.gain = gain;
        best.feature = feature;
        best.threshold = 0.5 * (prev_value + value);
      }
    }
    left.a += (*in.stat_a)[static_cast<std::size_t>(row)];
    left.b += (*in.stat_b)[static_cast<std::size_t>(row)];
    prev_value = value;
    have_prev = true;
  }
  return best;
}

Tree grow_tree(const BuildInput& in,
               std::vector<std::vector<std::int32_t>> root_sorted,
               Acc root_total, double root_count, Rng* feature_rng,
               std::vector<double>* split_gain) {
  Tree tree;
  tree.nodes.push_back(TreeNode{});
  tree.nodes[0].value = leaf_value(in.criterion, root_total);

  std::vector<PendingNode> level;
  level.push_back(PendingNode{0, 0, root_total, root_count,
                              std::move(root_sorted)});

  std::size_t p = in.n_cols;
  while (!level.empty()) {
    std::vector<PendingNode> next;
    for (PendingNode& node : level) {
      tree.nodes[static_cast<std::size_t>(node.tree_index)].value =
          leaf_value(in.criterion, node.total);
      if (node.depth >= in.max_depth || node.count < 2.0) continue;
      if (in.criterion == Criterion::Gini &&
          (node.total.a <= 0.0 || node.total.a >= node.total.b))
        continue;  // pure node

      // candidate features
      std::vector<int> features;
      if (in.m_try > 0 && in.m_try < p && feature_rng) {
        for (std::size_t f : feature_rng->sample_without_replacement(p, in.m_try))
          features.push_back(static_cast<int>(f));
      } else {
        features.resize(p);
        for (std::size_t f = 0; f < p; ++f) features[f] = static_cast<int>(f);
      }

      std::vector<BestSplit> per_feature(features.size());
      auto scan_one = [&](std::int64_t fi) {
        per_feature[static_cast<std::size_t>(fi)] = scan_feature(
            in, features[static_cast<std::size_t>(fi)],
            node.sorted[static_cast<std::size_t>(features[static_cast<std::size_t>(fi)])],
            node.total);
      };
      if (in.parallel_features) {
        par::parallel_for(static_cast<std::int64_t>(features.size()), scan_one);
      } else {
        for (std::int64_t fi = 0; fi < static_cast<std::int64_t>(features.size());
             ++fi)
          scan_one(fi);
      }

      BestSplit best;  // reduce in ascending candidate order: first wins ties
      for (const BestSplit& cand : per_feature)
        if (cand.feature >= 0 && cand.gain > best.gain + 0.0 &&
            cand.gain > kMinGain) {
          if (best.feature < 0 || cand.gain > best.gain) best = cand;
        }
      if (best.feature < 0) continue;

      if (split_gain)
        (*split_gain)[static_cast<std::size_t>(best.feature)] += best.gain;

      // materialize children: stable partition of every feature list
      PendingNode lnode, rnode;
      lnode.depth = rnode.depth = node.depth + 1;
      lnode.sorted.resize(p);
      rnode.sorted.resize(p);
      const std::vector<double>& x = *in.x;
      auto goes_left = [&](std::int32_t row) {
        return x[static_cast<std::size_t>(row) * in.n_cols +
                 static_cast<std::size_t>(best.feature)] < best.threshold;
      };
      for (std::size_t f = 0; f < p; ++f) {
        for (std::int32_t row : node.sorted[f]) {
          if (goes_left(row))
            lnode.sorted[f].push_back(row);
          else
            rnode.sorted[f].push_back(row);
        }
      }
      node.sorted.clear();
      for (std::int32_t row : lnode.sorted[0]) {
        lnode.total.a += (*in.stat_a)[static_cast<std::size_t>(row)];
        lnode.total.b += (*in.stat_b)[static_cast<std::size_t>(row)];
        lnode.count += (*in.row_count)[static_cast<std::size_t>(row)];
      }
      rnode.total.a = node.total.a - lnode.total.a;
      rnode.total.b = node.total.b - lnode.total.b;
      rnode.count = node.count - lnode.count;

      int li = static_cast<int>(tree.nodes.size());
      tree.nodes.push_back(TreeNode{});
      int ri = static_cast<int>(tree.nodes.size());
      tree.nodes.push_back(TreeNode{});
      TreeNode& parent = tree.nodes[static_cast<std::size_t>(node.tree_index)];
      parent.feature = best.feature;
      parent.threshold = best.threshold;
      parent.left = li;
      parent.right = ri;
      lnode.tree_index = li;
      rnode.tree_index = ri;
      tree.nodes[static_cast<std::size_t>(li)].value =
          leaf_value(in.criterion, lnode.total);
      tree.nodes[static_cast<std::size_t>(ri)].value =
          leaf_value(in.criterion, rnode.total);
      next.push_back(std::move(lnode));
      next.push_back(std::move(rnode));
    }
    level = std::move(next);
  }
  return tree;
}

// global presort per feature: row indices ordered by (value, row)
std::vector<std::vector<std::int32_t>> presort_features(
    const std::vector<double>& x, std::size_t n_rows, std::size_t n_cols) {
  std::vector<std::vector<std::int32_t>> sorted(n_cols);
  par::parallel_for(static_cast<std::int64_t>(n_cols), [&](std::int64_t f) {
    auto& order = sorted[static_cast<std::size_t>(f)];
    order.resize(n_rows);
    for (std::size_t i = 0; i < n_rows; ++i)
      order[i] = static_cast<std::int32_t>(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::int32_t a, std::int32_t b) {
                       double va = x[static_cast<std::size_t>(a) * n_cols +
                                     static_cast<std::size_t>(f)];
                       double vb = x[static_cast<std::size_t>(b) * n_cols +
                                     static_cast<std::size_t>(f)];
                       if (va != vb) return va < vb;
                       return a < b;
                     });
  });
  return sorted;
}

void validate_input(const std::vector<double>& x, std::size_t n_rows,
                    std::size_t n_cols, const std::vector<double>& y) {
  if (y.size() != n_rows || x.size() != n_rows * n_cols)
    throw Error(ErrorCode::ArityMismatch, "X/y shape mismatch");
  for (double v : y)
    if (v != 0.0 && v != 1.0)
      throw Error(ErrorCode::NonBinaryTarget,
                  "target values must be 0 or 1, got " + format_metric(v));
  for (double v : x)
    if (std::isnan(v))
      throw Error(ErrorCode::MissingValuesPresent, "X contains NaN");
}

// ---------------------------------------------------------------------------
// family fits
// ---------------------------------------------------------------------------

void fit_logistic(Estimator& model, const std::vector<double>& x,
                  std::size_t n_rows, std::size_t n_cols,
                  const std::vector<double>& y) {
  double l2 = hp(model.hyperparams, "l2", 0.1);
  int max_iter = static_cast<int>(hp(model.hyperparams, "max_iter", 5000));
  double tol = hp(model.hyperparams, "tol", 1e-8);

  model.lr_means.assign(n_cols, 0.0);
  model.lr_stds.assign(n_cols, 1.0);
  for (std::size_t j = 0; j < n_cols; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n_rows; ++i) sum += x[i * n_cols + j];
    double mean = sum / static_cast<double>(n_rows);
    double ss = 0.0;
    for (std::size_t i = 0; i < n_rows; ++i) {
      double d = x[i * n_cols + j] - mean;
      ss += d * d;
    }
    double sd = n_rows > 1 ? std::sqrt(ss / static_cast<double>(n_rows - 1)) : 0.0;
    model.lr_means[j] = mean;
    model.lr_stds[j] = sd > 0.0 ? sd : 1.0;
  }
  std::vector<double> xs(x.size());
  par::parallel_for(static_cast<std::int64_t>(n_rows), [&](std::int64_t i) {
    for (std::size_t j = 0; j < n_cols; ++j)
      xs[static_cast<std::size_t>(i) * n_cols + j] =
          (x[static_cast<std::size_t>(i) * n_cols + j] - model.lr_means[j]) /
          model.lr_stds[j];
  });

  std::vector<double> w(n_cols, 0.0);
  double intercept = 0.0;
  auto eval = kernels::logistic_eval(xs, n_rows, n_cols, y, w, intercept, l2);
  double step = 1.0;
  for (int iter = 0; iter < max_iter; ++iter) {
    double gsq = eval.grad_intercept * eval.grad_intercept;
    for (double g : eval.grad) gsq += g * g;
    if (std::sqrt(gsq) < 1e-10) break;
    step = std::min(step * 2.0, 1024.0);
    kernels::LogisticEval cand;
    std::vector<double> wc(n_cols);
    double ic = 0.0;
    while (true) {
      for (std::size_t j = 0; j < n_cols; ++j) wc[j] = w[j] - step * eval.grad[j];
      ic = intercept - step * eval.grad_intercept;
      cand = kernels::logistic_eval(xs, n_rows, n_cols, y, wc, ic, l2);
      if (cand.loss <= eval.loss - 0.5 * step * gsq || step < 1e-18) break;
      step *= 0.5;
    }
    if (cand.loss > eval.loss) break;  // no admissible step left
    double improvement = eval.loss - cand.loss;
    w = wc;
    intercept = ic;
    eval = std::move(cand);
    if (improvement <= tol * std::max(1.0, std::abs(eval.loss))) break;
  }
  model.lr_weights = std::move(w);
  model.lr_intercept = intercept;
}

void fit_decision_tree(Estimator& model, const std::vector<double>& x,
                       std::size_t n_rows, std::size_t n_cols,
                       const std::vector<double>& y) {
  int max_depth = static_cast<int>(hp(model.hyperparams, "max_depth", 5));
  if (max_depth < 1) throw Error(ErrorCode::BadValue, "max_depth must be >= 1");

  std::vector<double> stat_a(n_rows), stat_b(n_rows, 1.0), count(n_rows, 1.0);
  Acc total;
  for (std::size_t i = 0; i < n_rows; ++i) {
    stat_a[i] = y[i];
    total.a += y[i];
    total.b += 1.0;
  }
  BuildInput in;
  in.x = &x;
  in.n_cols = n_cols;
  in.stat_a = &stat_a;
  in.stat_b = &stat_b;
  in.row_count = &count;
  in.criterion = Criterion::Gini;
  in.max_depth = max_depth;
  in.parallel_features = true;

  model.split_gain.assign(n_cols, 0.0);
  model.trees.push_back(grow_tree(in, presort_features(x, n_rows, n_cols),
                                  total, static_cast<double>(n_rows), nullptr,
                                  &model.split_gain));
}

void fit_random_forest(Estimator& model, const std::vector<double>& x,
                       std::size_t n_rows, std::size_t n_cols,
                       const std::vector<double>& y) {
  int n_trees = static_cast<int>(hp(model.hyperparams, "n_estimators", 100));
  int max_depth = static_cast<int>(hp(model.hyperparams, "max_depth", 8));
  if (n_trees < 1) throw Error(ErrorCode::BadValue, "n_estimators must be >= 1");
  std::size_t m_try = static_cast<std::size_t>(
      std::ceil(std::sqrt(static_cast<double>(n_cols))));

  auto presorted = presort_features(x, n_rows, n_cols);
  model.trees.resize(static_cast<std::size_t>(n_trees));
  std::vector<std::vector<double>> gains(static_cast<std::size_t>(n_trees),
                                         std::vector<double>(n_cols, 0.0));

  par::parallel_for(n_trees, [&](std::int64_t t) {
    Rng rng = Rng::substream(model.seed, "forest",
                             static_cast<std::uint64_t>(t));
    std::vector<double> weight(n_rows, 0.0);
    for (std::size_t i = 0; i < n_rows; ++i)
      weight[static_cast<std::size_t>(rng.below(n_rows))] += 1.0;

    std::vector<double> stat_a(n_rows), stat_b(n_rows);
    Acc total;
    double count = 0.0;
    for (std::size_t i = 0; i < n_rows; ++i) {
      stat_a[i] = weight[i] * y[i];
      stat_b[i] = weight[i];
      total.a += stat_a[i];
      total.b += stat_b[i];
      count += weight[i];
    }
    // per-tree sorted lists keep only in-bag rows
    std::vector<std::vector<std::int32_t>> root(n_cols);
    for (std::size_t f = 0; f < n_cols; ++f) {
      root[f].reserve(n_rows);
      for (std::int32_t row : presorted[f])
        if (weight[static_cast<std::size_t>(row)] > 0.0) root[f].push_back(row);
    }
    BuildInput in;
    in.x = &x;
    in.n_cols = n_cols;
    in.stat_a = &stat_a;
    in.stat_b = &stat_b;
    in.row_count = &weight;
    in.criterion = Criterion::Gini;
    in.max_depth = max_depth;
    in.m_try = m_try;
    in.parallel_features = false;  // trees already run in parallel
    model.trees[static_cast<std::size_t>(t)] =
        grow_tree(in, std::move(root), total, count, &rng,
                  &gains[static_cast<std::size_t>(t)]);
  });

  model.split_gain.assign(n_cols, 0.0);
  for (const auto& g : gains)
    for (std::size_t j = 0; j < n_cols; ++j) model.split_gain[j] += g[j];
}

void fit_gradient_boosting(Estimator& model, const std::vector<double>& x,
                           std::size_t n_rows, std::size_t n_cols,
                           const std::vector<double>& y) {
  double lr = hp(model.hyperparams, "learning_rate", 0.1);
  int max_depth = static_cast<int>(hp(model.hyperparams, "max_depth", 3));
  int n_trees = static_cast<int>(hp(model.hyperparams, "n_estimators", 100));
  if (lr < 0.0) throw Error(ErrorCode::BadValue, "learning_rate must be >= 0");
  if (n_trees < 0) throw Error(ErrorCode::BadValue, "n_estimators must be >= 0");

  double pos = 0.0;
  for (double v : y) pos += v;
  double prior = pos / static_cast<double>(n_rows);
  prior = std::min(1.0 - 1e-12, std::max(1e-12, prior));
  model.base_score = std::log(prior / (1.0 - prior));
  model.learning_rate = lr;
  model.split_gain.assign(n_cols, 0.0);

  auto presorted = presort_features(x, n_rows, n_cols);
  std::vector<double> margin(n_rows, model.base_score);
  std::vector<double> grad(n_rows), hess(n_rows), count(n_rows, 1.0);

  for (int t = 0; t < n_trees; ++t) {
    Acc total;
    for (std::size_t i = 0; i < n_rows; ++i) {
      double p = sigmoid(margin[i]);
      grad[i] = p - y[i];
      hess[i] = p * (1.0 - p);
      total.a += grad[i];
      total.b += hess[i];
    }
    BuildInput in;
    in.x = &x;
    in.n_cols = n_cols;
    in.stat_a = &grad;
    in.stat_b = &hess;
    in.row_count = &count;
    in.criterion = Criterion::Newton;
    in.max_depth = max_depth;
    in.parallel_features = true;
    Tree tree = grow_tree(in, presorted, total, static_cast<double>(n_rows),
                          nullptr, &model.split_gain);
    par::parallel_for(static_cast<std::int64_t>(n_rows), [&](std::int64_t i) {
      margin[static_cast<std::size_t>(i)] +=
          lr * tree.predict_row(&x[static_cast<std::size_t>(i) * n_cols]);
    });
    model.trees.push_back(std::move(tree));
  }
}

}  // namespace

Estimator fit(Family family, const Hyperparams& params,
              const std::vector<double>& x, std::size_t n_rows,
              std::size_t n_cols, const std::vector<double>& y,
              const std::vector<std::string>& feature_names,
              std::uint64_t seed) {
  if (feature_names.size() != n_cols)
    throw Error(ErrorCode::ArityMismatch, "feature name count mismatch");
  if (n_rows == 0) throw Error(ErrorCode::BadValue, "empty training set");
  check_hyperparams(family, params);
  validate_input(x, n_rows, n_cols, y);

  Estimator model;
  model.family = family;
  model.hyperparams = params;
  model.feature_names = feature_names;
  model.seed = seed;
  switch (family) {
    case Family::LogisticRegression:
      fit_logistic(model, x, n_rows, n_cols, y);
      break;
    case Family::DecisionTree:
      fit_decision_tree(model, x, n_rows, n_cols, y);
      break;
    case Family::RandomForest:
      fit_random_forest(model, x, n_rows, n_cols, y);
      break;
    case Family::GradientBoosting:
      fit_gradient_boosting(model, x, n_rows, n_cols, y);
      break;
  }
  return model;
}

std::vector<double> predict_scores(const Estimator& model,
                                   const std::vector<double>& x,
                                   std::size_t n_rows) {
  std::size_t p = model.n_features();
  if (p == 0 || x.size() != n_rows * p)
    throw Error(ErrorCode::ArityMismatch,
                "feature vector arity does not match the model");
  std::vector<double> scores(n_rows, 0.0);
  switch (model.family) {
    case Family::LogisticRegression:
      par::parallel_for(static_cast<std::int64_t>(n_rows), [&](std::int64_t i) {
        const double* row = &x[static_cast<std::size_t>(i) * p];
        double z = model.lr_intercept;
        for (std::size_t j = 0; j < p; ++j)
          z += model.lr_weights[j] * (row[j] - model.lr_means[j]) /
               model.lr_stds[j];
        scores[static_cast<std::size_t>(i)] = sigmoid(z);
      });
      break;
    case Family::DecisionTree:
      par::parallel_for(static_cast<std::int64_t>(n_rows), [&](std::int64_t i) {
        scores[static_cast<std::size_t>(i)] =
            model.trees[0].predict_row(&x[static_cast<std::size_t>(i) * p]);
      });
      break;
    case Family::RandomForest:
      par::parallel_for(static_cast<std::int64_t>(n_rows), [&](std::int64_t i) {
        double s = 0.0;
        for (const Tree& t : model.trees)
          s += t.predict_row(&x[static_cast<std::size_t>(i) * p]);
        scores[static_cast<std::size_t>(i)] =
            s / static_cast<double>(model.trees.size());
      });
      break;
    case Family::GradientBoosting:
      par::parallel_for(static_cast<std::int64_t>(n_rows), [&](std::int64_t i) {
        double z = model.base_score;
        for (const Tree& t : model.trees)
          z += model.learning_rate *
               t.predict_row(&x[static_cast<std::size_t>(i) * p]);
        scores[static_cast<std::size_t>(i)] = sigmoid(z);
      });
      break;
  }
  return scores;
}

std::vector<double> predict(const Estimator& model, const std::vector<double>& x,
                            std::size_t n_rows) {
  auto scores = predict_scores(model, x, n_rows);
  std::vector<double> labels(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i)
    labels[i] = scores[i] >= 0.5 ? 1.0 : 0.0;
  return labels;
}

// ---------------------------------------------------------------------------
// persistence
// ---------------------------------------------------------------------------

namespace {
constexpr int kFormatVersion = 1;

nlohmann::json tree_to_json(const Tree& tree) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const TreeNode& n : tree.nodes)
    nodes.push_back({n.feature, n.threshold, n.left, n.right, n.value});
  return nodes;
}

Tree tree_from_json(const nlohmann::json& j) {
  Tree t;
  for (const auto& n : j) {
    TreeNode node;
    node.feature = n.at(0).get<int>();
    node.threshold = n.at(1).get<double>();
    node.left = n.at(2).get<int>();
    node.right = n.at(3).get<int>();
    node.value = n.at(4).get<double>();
    t.nodes.push_back(node);
  }
  return t;
}
}  // namespace

std::string model_to_json(const Estimator& model) {
  nlohmann::json j;
  j["format_version"] = kFormatVersion;
  j["family"] = family_name(model.family);
  j["hyperparams"] = model.hyperparams;
  j["feature_names"] = model.feature_names;
  j["seed"] = model.seed;
  nlohmann::json m;
  if (model.family == Family::LogisticRegression) {
    m["weights"] = model.lr_weights;
    m["intercept"] = model.lr_intercept;
    m["means"] = model.lr_means;
    m["stds"] = model.lr_stds;
  } else {
    nlohmann::json trees = nlohmann::json::array();
    for (const Tree& t : model.trees) trees.push_back(tree_to_json(t));
    m["trees"] = trees;
    m["base_score"] = model.base_score;
    m["learning_rate"] = model.learning_rate;
  }
  m["split_gain"] = model.split_gain;
  j["model"] = m;
  return j.dump(2);
}

Estimator model_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::CorruptArtifact, e.what());
  }
  try {
    int version = j.at("format_version").get<int>();
    if (version != kFormatVersion)
      throw Error(ErrorCode::VersionMismatch,
                  "artifact format_version " + std::to_string(version) +
                      ", expected " + std::to_string(kFormatVersion));
    Estimator model;
    auto family = family_from_name(j.at("family").get<std::string>());
    if (!family)
      throw Error(ErrorCode::CorruptArtifact, "unknown model family");
    model.family = *family;
    model.hyperparams = j.at("hyperparams").get<Hyperparams>();
    model.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    if (model.feature_names.empty())
      throw Error(ErrorCode::CorruptArtifact, "artifact lists no features");
    model.seed = j.at("seed").get<std::uint64_t>();
    const auto& m = j.at("model");
    model.split_gain = m.at("split_gain").get<std::vector<double>>();
    if (model.family == Family::LogisticRegression) {
      model.lr_weights = m.at("weights").get<std::vector<double>>();
      model.lr_intercept = m.at("intercept").get<double>();
      model.lr_means = m.at("means").get<std::vector<double>>();
      model.lr_stds = m.at("stds").get<std::vector<double>>();
    } else {
      for (const auto& t : m.at("trees")) model.trees.push_back(tree_from_json(t));
      model.base_score = m.at("base_score").get<double>();
      model.learning_rate = m.at("learning_rate").get<double>();
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::CorruptArtifact, e.what());
  }
}

void save_model(const Estimator& model, const std::string& path) {
  write_text_file(path, model_to_json(model) + "\n");
}

Estimator load_model(const std::string& path) {
  if (!std::filesystem::exists(path)) throw Error(ErrorCode::FileMissing, path);
  return model_from_json(read_text_file(path));
}

}  // namespace crewml::ml
