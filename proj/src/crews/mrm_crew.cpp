#include "crewml/crews/mrm_crew.hpp"

#include "crewml/crews/mrm.hpp"
#include "crewml/crews/tools.hpp"
#include "crewml/util/text.hpp"

namespace crewml::crews {

using core::AgentSpec;
using core::TaskSpec;

namespace {

AgentSpec agent(std::string role, std::string goal, std::string backstory,
                std::vector<std::string> tools, bool delegate = false,
                int max_iterations = 8) {
  AgentSpec a;
  a.role = std::move(role);
  a.goal = std::move(goal);
  a.backstory = std::move(backstory);
  a.tool_ids = std::move(tools);
  a.allow_delegation = delegate;
  a.max_iterations = max_iterations;
  return a;
}

}  // namespace

CrewBundle build_mrm_crew(const std::string& alias, const std::string& target) {
  CrewBundle bundle;
  core::CrewSpec& spec = bundle.spec;
  spec.process = core::ProcessMode::Hierarchical;

  spec.manager = agent(
      "Model Risk Manager",
      "Oversee the overall model risk management team with specific "
      "instructions.",
      "An expert skilled in model risk management who verifies that models "
      "developed by the modeling team are compliant and consistent.",
      {core::kDelegateToolId}, /*delegate=*/true, /*max_iterations=*/4);

  spec.agents = {
      agent("Senior Data Scientist - Documentation Compliance Check",
            "Verify the modeling crew documentation for compliance.",
            "Experienced compliance checker for model training.",
            {kRagComplianceToolId}),
      agent("Senior Machine Learning Engineer - Model Replication",
            "Replicate the model from the modeling crew, and verify results.",
            "Experienced independent agent in training and testing a model.",
            {kModelReplicationToolId}),
      agent("Senior Model Validation Analyst - Conceptual Soundness",
            "Assess the model's assumptions, performance metrics, and "
            "interpretability.",
            "Experienced agent in validating model assumptions.",
            {kConceptualSoundnessToolId}),
      agent("Senior Model Validation Analyst - Outcome Analyzer",
            "Perturb the data, and independently check the performance "
            "metrics.",
            "Skilled independent outcome analyzer.", {kOutcomeAnalysisToolId}),
      agent("Documentation Writer",
            "Write the model risk management documentation.",
            "Skilled technical writer with a deep understanding of model "
            "validation workflows.",
            {kMrmDocumentationToolId}),
  };

  auto task = [](std::string id, std::string description, std::string expected,
                 std::string assigned, std::vector<std::string> context) {
    TaskSpec t;
    t.id = std::move(id);
    t.description = std::move(description);
    t.expected_output = std::move(expected);
    t.assigned_agent = std::move(assigned);
    t.context_task_ids = std::move(context);
    return t;
  };

  spec.tasks = {
      task("m1_compliance",
           "Check the modeling documentation result with the organizational "
           "modeling guide/blueprint to verify if the modeling procedure "
           "conforms with the organizational modeling blueprint. The path to "
           "the file containing the organizational modeling guide is "
           "'{alias}/modeling_guide.txt'. The path to the txt file "
           "containing the modeling team's documentation file is "
           "'{alias}/crew_documentation.txt'.",
           "A per-stage compliance verdict with supporting guide excerpts.",
           "Senior Data Scientist - Documentation Compliance Check", {}),
      task("m2_replication",
           "Train and evaluate a machine learning model, then compare its "
           "metrics with that of the modeling team's metrics to see if they "
           "are the same. The train and test data can be found in "
           "'{alias}/train2.csv' and '{alias}/test2.csv' respectively. The "
           "selected model, its hyperparameters, and the modeling team's "
           "metrics are recorded in '{alias}/model.json' and "
           "'{alias}/metrics.json'. Train the model with the train data and "
           "hyperparameters above and evaluate it using the test data. "
           "Compare its accuracy, F1-score, recall, precision, and auc with "
           "the metrics from the modeling team. The target feature is named "
           "'{target}'.",
           "A replication report with per-metric deltas and a verdict.",
           "Senior Machine Learning Engineer - Model Replication",
           {"m1_compliance"}),
      task("m3_soundness",
           "Show the feature importance and explainability of the trained "
           "model located at '{alias}/model.json'. Print out the first 10 "
           "features that contributed to the results using the test data. "
           "When feature importance is established, give the rationale and "
           "reason for this process. Based on the feature importance write a "
           "narrative that confirms or refutes model compliance to standard "
           "practice. The test data can be found in '{alias}/test2.csv'. The "
           "target feature is named '{target}'.",
           "The top-10 feature importances and a soundness narrative.",
           "Senior Model Validation Analyst - Conceptual Soundness",
           {"m2_replication"}),
      task("m4_outcome",
           "Conduct additional testing on the model located at "
           "'{alias}/model.json'. The test data can be found in "
           "'{alias}/test2.csv'. The target feature is '{target}'. To "
           "conduct this additional testing you need to perturb the test "
           "data to simulate extreme or hypothetical scenarios, such as:\n"
           "1. Shifted inputs - significant shifts in input data "
           "distributions. Exclude the categorical variables from this "
           "process.\n2. Outlier and adversarial inputs, moving selected "
           "rows far outside the original distribution range.\nEvaluate the "
           "model's robustness and stability on the shifted inputs and on "
           "the adversarial/outlier inputs using performance benchmarks "
           "like accuracy, F1-score, precision, AUC, etc.",
           "Shifted-input and outlier-input metrics with a robustness "
           "narrative.",
           "Senior Model Validation Analyst - Outcome Analyzer",
           {"m3_soundness"}),
      task("m5_documentation",
           "Produce the model risk management documentation covering the "
           "compliance check, model replication, conceptual soundness, and "
           "outcome analysis, with the verdict for each. Save it in the "
           "directory '{alias}/' as 'mrm_report.txt'.",
           "The complete model risk management report.", "Documentation Writer",
           {"m1_compliance", "m2_replication", "m3_soundness", "m4_outcome"}),
  };

  bundle.inputs = {{"alias", alias}, {"target", target}};

  auto logical = [&](const char* file) { return alias + "/" + std::string(file); };
  bundle.plans = {
      {"m1_compliance",
       {"Senior Data Scientist - Documentation Compliance Check",
        kRagComplianceToolId,
        {{"guide_path", logical("modeling_guide.txt")},
         {"doc_path", logical(kDocumentationTxt)}}}},
      {"m2_replication",
       {"Senior Machine Learning Engineer - Model Replication",
        kModelReplicationToolId,
        {{"train_path", logical(kTrain2Csv)},
         {"test_path", logical(kTest2Csv)},
         {"model_path", logical(kModelJson)},
         {"target", target}}}},
      {"m3_soundness",
       {"Senior Model Validation Analyst - Conceptual Soundness",
        kConceptualSoundnessToolId,
        {{"model_path", logical(kModelJson)},
         {"test_path", logical(kTest2Csv)},
         {"target", target}}}},
      {"m4_outcome",
       {"Senior Model Validation Analyst - Outcome Analyzer",
        kOutcomeAnalysisToolId,
        {{"model_path", logical(kModelJson)},
         {"test_path", logical(kTest2Csv)},
         {"target", target}}}},
      {"m5_documentation",
       {"Documentation Writer", kMrmDocumentationToolId,
        nlohmann::json::object()}},
  };
  return bundle;
}

const std::string& default_modeling_guide() {
  static const std::string guide = R"(Comprehensive Guide to Machine Learning Pipeline Development

Introduction:
Machine learning pipeline development is a structured process with a series
of stages that every modeling team in this organization follows when building
and deploying a classification model. Each stage below must be executed and
documented before a model may be submitted for validation.

## Exploratory Data Analysis

Every engagement starts with Exploratory Data Analysis. The team inspects the
shape of the dataset, identifies features with missing values and the share
of missing cells per feature, reviews descriptive statistics for every
feature, measures skewness of the distributions, quantifies class imbalance
of the target variable, computes the correlation matrix across numeric
features, and flags outliers. The Exploratory Data Analysis findings must be
summarized in the documentation.

## Feature Engineering

Feature Engineering prepares the data for training. Categorical features are
label encoded with encoders fitted on the training split only. Missing values
are imputed; K-Nearest Neighbors imputation fitted on the training split is
the standard approach. Class imbalance must be checked: when the majority
class reaches sixty percent or more of the rows, the team rebalances with
SMOTE oversampling or random downsampling. The train-test split always
precedes Feature Engineering so no information leaks from the test data.
Transformed datasets are saved alongside the raw data.

## Model Selection

Model Selection compares candidate model families with stratified
cross-validated grid search and records the rationale for the winning
family. Accuracy is the decisive scalar; precision, recall, and F1 are
reported alongside.

## Hyperparameter Tuning

Hyperparameter Tuning searches a predefined grid for the selected family
using five-fold cross-validation and stores the chosen values as an artifact
so the model can be reproduced exactly.

## Model Training

Model Training fits the selected family with the tuned hyperparameters on
the full transformed training data and persists the trained model artifact.

## Model Evaluation

Model Evaluation measures accuracy, F1-score, recall, precision, AUC, and
the top capture rate on the transformed test data. A classification model
must reach a test accuracy of at least 0.70 before it may be deployed; teams
should also verify that the top-ranked features are plausible drivers of the
business decision.

Validation:
The model risk management team independently replicates every trained model,
checks this documentation for compliance with the stages above, assesses
conceptual soundness, and probes robustness with shifted and adversarial
inputs before sign-off.
)";
  return guide;
}

void write_default_guide(const std::string& path) {
  write_text_file(path, default_modeling_guide());
}

}  // namespace crewml::crews
