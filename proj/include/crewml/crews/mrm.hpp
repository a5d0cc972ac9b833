#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "crewml/ml/estimator.hpp"
#include "crewml/ml/importance.hpp"
#include "crewml/ml/metrics.hpp"
#include "crewml/tab/schema.hpp"
#include "crewml/tab/table.hpp"

namespace crewml::crews {

inline const std::vector<std::string>& pipeline_stages() {
  static const std::vector<std::string> stages = {
      "Exploratory Data Analysis", "Feature Engineering", "Model Selection",
      "Hyperparameter Tuning",     "Model Training",      "Model Evaluation"};
  return stages;
}

// ---------------------------------------------------------------------------
// compliance
// ---------------------------------------------------------------------------

struct StageVerdict {
  std::string stage;
  bool heading_present = false;
  bool evidence_found = false;  // >= 1 retrieved guide chunk mentions the stage
  std::vector<std::pair<std::size_t, double>> retrieved;  // chunk index, score
  bool pass() const { return heading_present && evidence_found; }
};

struct ComplianceReport {
  std::vector<StageVerdict> stages;
  bool compliant = false;  // all six stages pass
  std::string narrative;
  nlohmann::json to_json() const;
  static ComplianceReport from_json(const nlohmann::json& j);
};

/// Deterministic core: the guide is chunked (~500-char overlapping windows)
/// and queried per stage with tf-idf cosine; a stage passes when its heading
/// appears in the documentation and at least one retrieved chunk mentions it.
ComplianceReport check_compliance(const std::string& documentation,
                                  const std::string& guide);

// ---------------------------------------------------------------------------
// replication
// ---------------------------------------------------------------------------

struct ReplicationReport {
  std::map<std::string, double> reference;
  std::map<std::string, double> replicated;
  std::map<std::string, double> deltas;  // absolute differences
  double tolerance = 1e-9;
  bool replicated_ok = false;
  std::string narrative;
  nlohmann::json to_json() const;
  static ReplicationReport from_json(const nlohmann::json& j);
};

/// Refits with the reference artifact's family/hyperparams/seed on train2,
/// evaluates on test2 and compares metric-by-metric. Same-engine tolerance
/// 1e-9; cross_engine widens it to 0.02.
ReplicationReport replicate_model(const tab::Table& train2,
                                  const tab::Table& test2,
                                  const std::string& target,
                                  const ml::Estimator& reference_model,
                                  const std::map<std::string, double>& reference_metrics,
                                  bool cross_engine = false);

// ---------------------------------------------------------------------------
// conceptual soundness
// ---------------------------------------------------------------------------

struct SoundnessReport {
  ml::ImportanceReport importance;
  std::vector<std::string> top_features;  // first ten of the ordering
  bool benchmarks_met = false;
  bool plausible_features_found = false;
  bool method_appropriate = false;
  double test_accuracy = 0.0;
  double min_accuracy_benchmark = 0.0;
  std::string narrative;
  bool pass() const {
    return benchmarks_met && plausible_features_found && method_appropriate;
  }
  nlohmann::json to_json() const;
  static SoundnessReport from_json(const nlohmann::json& j);
};

SoundnessReport assess_soundness(const ml::Estimator& model,
                                 const tab::Table& test2,
                                 const std::string& target,
                                 const std::vector<std::string>& plausible_features,
                                 double min_accuracy_benchmark,
                                 std::uint64_t seed);

// ---------------------------------------------------------------------------
// outcome analysis
// ---------------------------------------------------------------------------

enum class ShiftMode { AddFixed, AddRandom, MultiplyFixed };

const char* shift_mode_name(ShiftMode mode);
std::optional<ShiftMode> shift_mode_from_name(const std::string& name);

/// Numeric non-target columns move (add-fixed: +c*sigma; add-random:
/// +N(0,(c*sigma)^2), substream "perturb"; multiply-fixed: *(1+c));
/// categorical, flag, and target columns are bit-unchanged.
tab::Table perturb_shifted(const tab::Table& test2,
                           const std::vector<tab::ColumnSchema>& schema,
                           ShiftMode mode, double magnitude, std::uint64_t seed);

/// The listed rows' numeric feature cells increase by `magnitude`; every
/// other row is bit-identical.
tab::Table perturb_outliers(const tab::Table& test2,
                            const std::vector<tab::ColumnSchema>& schema,
                            const std::vector<std::size_t>& rows = {0},
                            double magnitude = 1000.0);

struct OutcomeReport {
  std::map<std::string, double> baseline;
  std::map<std::string, double> shifted;
  std::map<std::string, double> outlier;
  std::map<std::string, double> shifted_deltas;  // baseline - shifted
  std::map<std::string, double> outlier_deltas;
  std::vector<std::string> sensitivity_flags;  // metrics dropping > threshold
  std::string narrative;
  nlohmann::json to_json() const;  // result shape: shifted_inputs /
                                   // adversarial_outlier_inputs dictionaries
  static OutcomeReport from_json(const nlohmann::json& j);
};

struct OutcomeOptions {
  ShiftMode mode = ShiftMode::AddRandom;
  double magnitude = 1.0;
  std::vector<std::size_t> outlier_rows = {0};
  double outlier_magnitude = 1000.0;
  double drop_flag_threshold = 0.05;
};

OutcomeReport analyze_outcomes(const ml::Estimator& model,
                               const tab::Table& test2,
                               const std::string& target, std::uint64_t seed,
                               const OutcomeOptions& options = {});

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

struct MrmReport {
  ComplianceReport compliance;
  ReplicationReport replication;
  SoundnessReport soundness;
  OutcomeReport outcome;
  bool overall_pass = false;  // compliance && replication && soundness
};

/// Four sections in fixed order with verdicts and metric tables. The outcome
/// section contributes findings, not the overall gate.
std::string render_mrm_report(const MrmReport& report);

/// Metric map used across MRM comparisons (accuracy, f1, recall, precision,
/// auc = label-based, capture_rate when defined).
std::map<std::string, double> metric_map(const ml::MetricsReport& metrics);

/// Removes one "## <stage>" section (heading and body) from rendered
/// documentation; returns the text unchanged when the heading is absent.
std::string remove_documentation_section(const std::string& documentation,
                                         const std::string& stage);

}  // namespace crewml::crews
