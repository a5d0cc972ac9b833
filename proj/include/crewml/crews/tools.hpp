#pragma once

#include "crewml/core/types.hpp"

namespace crewml::crews {

/// The typed tool catalog the agents dispatch into. Replaces free-form code
/// execution: each pipeline step is a deterministic tool keyed by the same
/// logical paths the prompts use.
core::ToolCatalog standard_catalog();

// tool ids
inline constexpr const char* kEdaToolId = "eda_tool";
inline constexpr const char* kFeatureEngineeringToolId = "feature_engineering";
inline constexpr const char* kModelSelectionToolId = "model_selection";
inline constexpr const char* kHyperparameterTuningToolId = "hyperparameter_tuning";
inline constexpr const char* kModelTrainingToolId = "model_training";
inline constexpr const char* kModelEvaluationToolId = "model_evaluation";
inline constexpr const char* kDocumentationToolId = "documentation_writer";
inline constexpr const char* kRagComplianceToolId = "rag_compliance";
inline constexpr const char* kModelReplicationToolId = "model_replication";
inline constexpr const char* kConceptualSoundnessToolId = "conceptual_soundness";
inline constexpr const char* kOutcomeAnalysisToolId = "outcome_analysis";
inline constexpr const char* kMrmDocumentationToolId = "mrm_documentation";

// artifact file names inside a run's output directory
inline constexpr const char* kTrainCsv = "train.csv";
inline constexpr const char* kTestCsv = "test.csv";
inline constexpr const char* kTrain2Csv = "train2.csv";
inline constexpr const char* kTest2Csv = "test2.csv";
inline constexpr const char* kEdaReportJson = "eda_report.json";
inline constexpr const char* kSelectionJson = "selection.json";
inline constexpr const char* kHyperParamsTxt = "hyper_params.txt";
inline constexpr const char* kModelJson = "model.json";
inline constexpr const char* kMetricsJson = "metrics.json";
inline constexpr const char* kDocumentationTxt = "crew_documentation.txt";
inline constexpr const char* kModelingReportJson = "modeling_report.json";
inline constexpr const char* kComplianceJson = "compliance.json";
inline constexpr const char* kReplicationJson = "replication.json";
inline constexpr const char* kSoundnessJson = "soundness.json";
inline constexpr const char* kOutcomeJson = "outcome.json";
inline constexpr const char* kMrmReportTxt = "mrm_report.txt";
inline constexpr const char* kMrmResultJson = "mrm_result.json";
inline constexpr const char* kRunLogJsonl = "run_log.jsonl";
inline constexpr const char* kMemoryDumpJsonl = "memory.jsonl";

}  // namespace crewml::crews
