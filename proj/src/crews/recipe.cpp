#include "crewml/crews/recipe.hpp"

#include "crewml/util/error.hpp"

namespace crewml::crews {

using ml::Family;

const char* strategy_name(ImbalanceStrategy s) {
  return s == ImbalanceStrategy::Smote ? "smote" : "downsample";
}

ml::GridSpec default_grid(Family family) {
  ml::GridSpec grid;
  grid.family = family;
  switch (family) {
    case Family::LogisticRegression:
      grid.axes = {{"l2", {0.01, 0.1, 1.0}}};
      break;
    case Family::DecisionTree:
      grid.axes = {{"max_depth", {3, 5, 8}}};
      break;
    case Family::RandomForest:
      grid.axes = {{"n_estimators", {100, 200}}, {"max_depth", {5, 8}}};
      break;
    case Family::GradientBoosting:
      grid.axes = {{"learning_rate", {0.05, 0.1}},
                   {"max_depth", {3, 5}},
                   {"n_estimators", {100, 200}}};
      break;
  }
  return grid;
}

nlohmann::json Recipe::to_params() const {
  nlohmann::json j;
  j["name"] = name;
  j["alias"] = alias;
  j["target"] = target;
  j["drop_columns"] = drop_columns;
  j["strategy"] = strategy_name(strategy);
  j["resample_test"] = resample_test;
  j["imbalance_threshold"] = imbalance_threshold;
  j["split_ratio"] = split_ratio;
  j["cv_folds"] = cv_folds;
  j["smote_k"] = smote_k;
  j["impute_k"] = impute_k;
  j["min_accuracy_benchmark"] = min_accuracy_benchmark;
  j["plausible_features"] = plausible_features;
  nlohmann::json grids = nlohmann::json::array();
  for (const auto& g : candidates) {
    nlohmann::json axes = nlohmann::json::array();
    for (const auto& [name_, values] : g.axes)
      axes.push_back({{"name", name_}, {"values", values}});
    grids.push_back({{"family", ml::family_name(g.family)}, {"axes", axes}});
  }
  j["candidates"] = grids;
  return j;
}

Recipe credit_recipe(const std::string& csv_path, const std::string& output_dir) {
  Recipe r;
  r.name = "credit";
  r.alias = "credit";
  r.raw_logical = "credit/credit_risk_dataset.csv";
  r.inputs[r.raw_logical] = csv_path;
  r.target = "loan_status";
  r.drop_columns = {"person_age"};
  r.strategy = ImbalanceStrategy::Smote;
  r.resample_test = false;
  r.candidates = {default_grid(Family::LogisticRegression),
                  default_grid(Family::DecisionTree),
                  default_grid(Family::RandomForest),
                  default_grid(Family::GradientBoosting)};
  r.plausible_features = {"loan_grade", "loan_percent_income",
                          "cb_person_default_on_file", "person_home_ownership",
                          "loan_intent"};
  r.output_dir = output_dir;
  return r;
}

Recipe fraud_recipe(const std::string& csv_path, const std::string& output_dir,
                    bool smote_variant) {
  Recipe r;
  r.name = "fraud";
  r.alias = "fraud_dir";
  r.raw_logical = "fraud_dir/fraud.csv";
  r.inputs[r.raw_logical] = csv_path;
  r.target = "Class";
  r.strategy = smote_variant ? ImbalanceStrategy::Smote
                             : ImbalanceStrategy::Downsample;
  r.resample_test = false;
  r.candidates = {default_grid(Family::LogisticRegression),
                  default_grid(Family::DecisionTree)};
  r.plausible_features = {"V4", "V22", "V21", "V28", "V27", "V14", "V12",
                          "V10", "V17", "V11"};
  r.output_dir = output_dir;
  return r;
}

Recipe card_recipe(const std::string& application_csv,
                   const std::string& credit_csv,
                   const std::string& output_dir) {
  Recipe r;
  r.name = "card";
  r.alias = "card";
  r.inputs["card/application_record.csv"] = application_csv;
  r.inputs["card/credit_record.csv"] = credit_csv;
  r.raw_logical = "card/merged.csv";
  r.target = "TARGET";
  r.strategy = ImbalanceStrategy::Smote;
  r.resample_test = true;  // the logged pipeline resamples the test set too
  r.card_merge = true;
  r.candidates = {default_grid(Family::DecisionTree),
                  default_grid(Family::RandomForest)};
  r.plausible_features = {"F_OWN_REALTY", "CODE_GENDER", "ACCOUNT_AGE",
                          "F_OWN_CAR", "F_PHONE"};
  r.output_dir = output_dir;
  return r;
}

Recipe synthetic_recipe(const std::string& csv_path,
                        const std::string& output_dir) {
  Recipe r;
  r.name = "synthetic";
  r.alias = "synthetic";
  r.raw_logical = "synthetic/data.csv";
  r.inputs[r.raw_logical] = csv_path;
  r.target = "target";
  r.strategy = ImbalanceStrategy::Smote;
  r.resample_test = false;
  // trimmed grids keep the hermetic end-to-end run fast
  ml::GridSpec gbt;
  gbt.family = Family::GradientBoosting;
  gbt.axes = {{"learning_rate", {0.1}},
              {"max_depth", {3}},
              {"n_estimators", {50, 100}}};
  r.candidates = {default_grid(Family::LogisticRegression),
                  ml::GridSpec{Family::DecisionTree, {{"max_depth", {3, 5}}}},
                  gbt};
  r.plausible_features = {"x1", "x2", "x3"};
  r.output_dir = output_dir;
  return r;
}

Recipe recipe_by_name(const std::string& name,
                      const std::map<std::string, std::string>& data_paths,
                      const std::string& output_dir) {
  auto need = [&](const std::string& key) -> std::string {
    auto it = data_paths.find(key);
    if (it == data_paths.end())
      throw Error(ErrorCode::DataMissing,
                  "recipe '" + name + "' needs data path '" + key + "'");
    return it->second;
  };
  if (name == "credit") return credit_recipe(need("csv"), output_dir);
  if (name == "fraud") return fraud_recipe(need("csv"), output_dir, false);
  if (name == "fraud-smote") return fraud_recipe(need("csv"), output_dir, true);
  if (name == "card")
    return card_recipe(need("application_csv"), need("credit_csv"), output_dir);
  if (name == "synthetic") return synthetic_recipe(need("csv"), output_dir);
  throw Error(ErrorCode::InvalidRecipe, "unknown recipe '" + name + "'");
}

}  // namespace crewml::crews
