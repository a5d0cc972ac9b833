#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crewml/ml/estimator.hpp"

namespace crewml::ml {

enum class ImportanceMethod { Coefficients, Impurity, Permutation, LogProbability };

const char* importance_method_name(ImportanceMethod method);

struct ImportanceReport {
  ImportanceMethod method = ImportanceMethod::Impurity;
  std::map<std::string, double> scores;
  std::vector<std::string> ordering;  // descending score, ties by feature order
};

/// Default dispatch: LR -> |standardized coefficients|; tree families ->
/// normalized total split gain. Permutation (substream "permimp", 10 repeats,
/// accuracy drop) works for any family. LogProbability is recognized by the
/// dispatch but has no in-scope family -> MethodUnsupported.
ImportanceReport feature_importance(const Estimator& model,
                                    std::optional<ImportanceMethod> method,
                                    const std::vector<double>& x_test,
                                    std::size_t n_rows,
                                    const std::vector<double>& y_test,
                                    std::uint64_t seed);

}  // namespace crewml::ml
