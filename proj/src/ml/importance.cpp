#include "crewml/ml/importance.hpp"

#include <algorithm>
#include <cmath>

#include "crewml/util/error.hpp"
#include "crewml/util/rng.hpp"

namespace crewml::ml {

const char* importance_method_name(ImportanceMethod method) {
  switch (method) {
    case ImportanceMethod::Coefficients: return "coefficients";
    case ImportanceMethod::Impurity: return "impurity";
    case ImportanceMethod::Permutation: return "permutation";
    case ImportanceMethod::LogProbability: return "log-probability";
  }
  return "unknown";
}

namespace {

constexpr int kPermutationRepeats = 10;

double accuracy_of(const Estimator& model, const std::vector<double>& x,
                   std::size_t n_rows, const std::vector<double>& y) {
  auto pred = predict(model, x, n_rows);
  double correct = 0.0;
  for (std::size_t i = 0; i < n_rows; ++i)
    if (pred[i] == y[i]) correct += 1.0;
  return correct / static_cast<double>(n_rows);
}

void finish_ordering(ImportanceReport& report,
                     const std::vector<std::string>& names) {
  std::vector<std::size_t> order(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return report.scores.at(names[a]) > report.scores.at(names[b]);
  });
  for (std::size_t i : order) report.ordering.push_back(names[i]);
}

}  // namespace

ImportanceReport feature_importance(const Estimator& model,
                                    std::optional<ImportanceMethod> method,
                                    const std::vector<double>& x_test,
                                    std::size_t n_rows,
                                    const std::vector<double>& y_test,
                                    std::uint64_t seed) {
  if (model.feature_names.empty())
    throw Error(ErrorCode::CorruptArtifact, "model lists no features");

  ImportanceMethod use = method.value_or(
      model.family == Family::LogisticRegression ? ImportanceMethod::Coefficients
                                                 : ImportanceMethod::Impurity);
  if (use == ImportanceMethod::LogProbability)
    throw Error(ErrorCode::MethodUnsupported,
                "log-probability importance applies to naive Bayes models, "
                "which are not available");
  if (use == ImportanceMethod::Coefficients &&
      model.family != Family::LogisticRegression)
    throw Error(ErrorCode::MethodUnsupported,
                "coefficient importance needs a linear model");
  if (use == ImportanceMethod::Impurity &&
      model.family == Family::LogisticRegression)
    throw Error(ErrorCode::MethodUnsupported,
                "impurity importance needs a tree model");

  ImportanceReport report;
  report.method = use;
  const auto& names = model.feature_names;
  std::size_t p = names.size();

  if (use == ImportanceMethod::Coefficients) {
    // standardized coefficients = per-feature log-odds ratios
    for (std::size_t j = 0; j < p; ++j)
      report.scores[names[j]] = std::abs(model.lr_weights[j]);
  } else if (use == ImportanceMethod::Impurity) {
    double total = 0.0;
    for (double g : model.split_gain) total += g;
    for (std::size_t j = 0; j < p; ++j)
      report.scores[names[j]] = total > 0.0 ? model.split_gain[j] / total : 0.0;
  } else {
    double baseline = accuracy_of(model, x_test, n_rows, y_test);
    for (std::size_t j = 0; j < p; ++j) {
      double drop_sum = 0.0;
      for (int rep = 0; rep < kPermutationRepeats; ++rep) {
        Rng rng = Rng::substream(
            seed, "permimp",
            static_cast<std::uint64_t>(j) * kPermutationRepeats +
                static_cast<std::uint64_t>(rep));
        std::vector<std::size_t> perm(n_rows);
        for (std::size_t i = 0; i < n_rows; ++i) perm[i] = i;
        rng.shuffle(perm);
        std::vector<double> shuffled = x_test;
        for (std::size_t i = 0; i < n_rows; ++i)
          shuffled[i * p + j] = x_test[perm[i] * p + j];
        drop_sum += baseline - accuracy_of(model, shuffled, n_rows, y_test);
      }
      report.scores[names[j]] = drop_sum / kPermutationRepeats;
    }
  }
  finish_ordering(report, names);
  return report;
}

}  // namespace crewml::ml
