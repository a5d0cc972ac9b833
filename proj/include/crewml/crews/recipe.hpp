#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "crewml/ml/cv.hpp"

namespace crewml::crews {

enum class ImbalanceStrategy { Smote, Downsample };

const char* strategy_name(ImbalanceStrategy s);

/// Per-dataset modeling pipeline description. Prompt text always refers to
/// logical paths ("<alias>/train2.csv"); the tool context resolves them to
/// the run's real directories, which keeps replay transcripts portable.
struct Recipe {
  std::string name;    // fraud | card | credit | synthetic
  std::string alias;   // logical path prefix used inside prompts
  std::map<std::string, std::string> inputs;  // logical -> real path
  std::string raw_logical;  // logical path of the table EDA and split see
  std::string target;
  std::vector<std::string> drop_columns;
  ImbalanceStrategy strategy = ImbalanceStrategy::Smote;
  bool resample_test = false;
  double imbalance_threshold = 0.60;
  double split_ratio = 0.8;
  int cv_folds = 5;
  std::size_t smote_k = 5;
  std::size_t impute_k = 5;
  std::vector<ml::GridSpec> candidates;
  std::vector<std::string> plausible_features;
  double min_accuracy_benchmark = 0.70;
  bool card_merge = false;  // two raw tables aggregated + joined before EDA
  std::string output_dir;

  nlohmann::json to_params() const;
};

/// The spec'd default grids; recipes reference these per family.
ml::GridSpec default_grid(ml::Family family);

Recipe credit_recipe(const std::string& csv_path, const std::string& output_dir);
/// smote_variant = false reproduces the downsample flow; true the SMOTE one.
Recipe fraud_recipe(const std::string& csv_path, const std::string& output_dir,
                    bool smote_variant = false);
Recipe card_recipe(const std::string& application_csv,
                   const std::string& credit_csv,
                   const std::string& output_dir);
Recipe synthetic_recipe(const std::string& csv_path,
                        const std::string& output_dir);

Recipe recipe_by_name(const std::string& name,
                      const std::map<std::string, std::string>& data_paths,
                      const std::string& output_dir);

}  // namespace crewml::crews
