#include "crewml/crews/tools.hpp"

#include <filesystem>
#include <sstream>

#include "crewml/crews/mrm.hpp"
#include "crewml/eda/eda.hpp"
#include "crewml/ml/cv.hpp"
#include "crewml/ml/dataset.hpp"
#include "crewml/ml/estimator.hpp"
#include "crewml/ml/metrics.hpp"
#include "crewml/tab/ops.hpp"
#include "crewml/util/error.hpp"
#include "crewml/util/text.hpp"

namespace crewml::crews {

using core::Artifact;
using core::Tool;
using core::ToolContext;
using core::ToolResult;

namespace {

std::string require_string(const nlohmann::json& input, const char* field) {
  if (!input.contains(field) || !input.at(field).is_string())
    throw Error(ErrorCode::BadValue,
                std::string("tool input needs string field '") + field + "'");
  return input.at(field).get<std::string>();
}

std::string logical_artifact(const ToolContext& ctx, const std::string& file) {
  std::string prefix = ctx.params.value("alias", ctx.logical_prefix);
  return prefix.empty() ? file : prefix + "/" + file;
}

tab::Table load_table(const ToolContext& ctx, const std::string& logical) {
  std::string real = ctx.resolve(logical);
  if (!std::filesystem::exists(real))
    throw Error(ErrorCode::DataMissing,
                "'" + logical + "' (resolved to " + real + ") does not exist");
  return tab::load_csv(real);
}

std::vector<ml::GridSpec> grids_from_params(const nlohmann::json& params) {
  std::vector<ml::GridSpec> grids;
  for (const auto& g : params.at("candidates")) {
    ml::GridSpec spec;
    auto family = ml::family_from_name(g.at("family").get<std::string>());
    if (!family)
      throw Error(ErrorCode::BadValue, "unknown candidate family in recipe");
    spec.family = *family;
    for (const auto& axis : g.at("axes"))
      spec.axes.emplace_back(axis.at("name").get<std::string>(),
                             axis.at("values").get<std::vector<double>>());
    grids.push_back(std::move(spec));
  }
  return grids;
}

nlohmann::json read_json_artifact(const ToolContext& ctx,
                                  const std::string& file) {
  std::string real = ctx.resolve(logical_artifact(ctx, file));
  if (!std::filesystem::exists(real))
    throw Error(ErrorCode::DataMissing,
                file + " not found; run the earlier pipeline stage first");
  auto j = nlohmann::json::parse(read_text_file(real), nullptr, false);
  if (j.is_discarded())
    throw Error(ErrorCode::CorruptArtifact, real + " is not valid JSON");
  return j;
}

std::string metrics_block(const std::map<std::string, double>& m) {
  std::ostringstream out;
  out << "- Accuracy: " << format_metric(m.at("accuracy")) << "\n";
  out << "- F1-score: " << format_metric(m.at("f1")) << "\n";
  out << "- Recall: " << format_metric(m.at("recall")) << "\n";
  out << "- Precision: " << format_metric(m.at("precision")) << "\n";
  if (m.count("auc")) out << "- AUC: " << format_metric(m.at("auc")) << "\n";
  if (m.count("capture_rate"))
    out << "- Top capture rate (10%): " << format_metric(m.at("capture_rate"))
        << "\n";
  return out.str();
}

std::map<std::string, double> metrics_from_json(const nlohmann::json& j) {
  std::map<std::string, double> out;
  for (const char* key :
       {"accuracy", "f1", "recall", "precision", "auc", "auc_score",
        "capture_rate"})
    if (j.contains(key) && j.at(key).is_number())
      out[key] = j.at(key).get<double>();
  return out;
}

std::string upper(const std::string& s) {
  std::string out = s;
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

// ---------------------------------------------------------------------------
// modeling tools
// ---------------------------------------------------------------------------

ToolResult eda_tool(const ToolContext& ctx, const nlohmann::json& input) {
  std::string csv_path = require_string(input, "csv_path");
  std::string target = input.value("target", ctx.params.value("target", ""));
  tab::Table table = load_table(ctx, csv_path);
  eda::EdaReport report = eda::run_eda(table, target);

  std::string json_path = ctx.resolve(logical_artifact(ctx, kEdaReportJson));
  write_text_file(json_path, eda::eda_report_json(report) + "\n");

  ToolResult result;
  result.observation = eda::render_eda_summary(report);
  result.artifacts.push_back(Artifact{kEdaReportJson, json_path});
  return result;
}

ToolResult feature_engineering_tool(const ToolContext& ctx,
                                    const nlohmann::json& input) {
  std::string train_path = require_string(input, "train_path");
  std::string test_path = require_string(input, "test_path");
  std::string target = input.value("target", ctx.params.value("target", ""));

  tab::Table train = load_table(ctx, train_path);
  tab::Table test = load_table(ctx, test_path);

  std::ostringstream report;
  report << "## Feature Engineering Report:\n\n";

  // 1) drops
  std::vector<std::string> drops =
      ctx.params.value("drop_columns", std::vector<std::string>{});
  report << "1. Dropping Features:\n";
  if (drops.empty()) {
    report << "   - No features dropped.\n";
  } else {
    train = train.drop_columns(drops);
    test = test.drop_columns(drops);
    for (const auto& name : drops)
      report << "   - Dropped '" << name
             << "' from both the train and test datasets.\n";
  }

  // 2) label encoding, fitted on train only
  auto schema = tab::infer_schema(train, target);
  tab::EncoderState encoders = tab::fit_label_encoders(train, schema);
  train = tab::apply_label_encoders(encoders, train);
  test = tab::apply_label_encoders(encoders, test);
  report << "\n2. Label Encoding:\n";
  if (encoders.mappings.empty()) {
    report << "   - No categorical features required encoding.\n";
  } else {
    report << "   - Label encoded (fit on train, transform on test):";
    bool first = true;
    for (const auto& [name, mapping] : encoders.mappings) {
      report << (first ? " " : ", ") << "'" << name << "'";
      first = false;
    }
    report << ".\n";
  }

  // 3) KNN imputation, fitted on train only
  auto encoded_schema = tab::infer_schema(train, target);
  std::size_t train_missing = 0, test_missing = 0;
  for (const auto& col : train.columns()) train_missing += col.missing_count();
  for (const auto& col : test.columns()) test_missing += col.missing_count();
  report << "\n3. K-Nearest Neighbors (KNN) Imputation:\n";
  if (train_missing + test_missing == 0) {
    report << "   - No missing values found; imputation skipped.\n";
  } else {
    std::size_t k = ctx.params.value("impute_k", 5);
    tab::ImputerState imputer = tab::fit_knn_imputer(train, encoded_schema, k);
    train = tab::apply_knn_imputer(imputer, train, encoded_schema);
    test = tab::apply_knn_imputer(imputer, test, encoded_schema);
    report << "   - Filled " << train_missing << " train and " << test_missing
           << " test missing cells with k=" << k
           << " nearest-neighbor imputation (fit on train, transform on "
              "both).\n";
  }

  // 4) imbalance check + resampling
  double threshold = ctx.params.value("imbalance_threshold", 0.60);
  std::string strategy = ctx.params.value("strategy", "smote");
  bool resample_test = ctx.params.value("resample_test", false);
  auto proportions = tab::class_proportions(train, target);
  double majority = 0.0;
  for (const auto& [value, fraction] : proportions)
    majority = std::max(majority, fraction);
  report << "\n4. Class Imbalance Check and "
         << (strategy == "smote" ? "SMOTE" : "Random Downsampling") << ":\n";
  report << "   - Majority class proportion in the train target '" << target
         << "': " << format_fixed(majority * 100.0, 2) << "%.\n";
  if (majority >= threshold) {
    std::uint64_t seed = ctx.seed;
    if (strategy == "smote") {
      std::size_t k = ctx.params.value("smote_k", 5);
      train = tab::smote(train, target, k, seed);
      if (resample_test) test = tab::smote(test, target, k, seed + 1);
    } else {
      train = tab::random_downsample(train, target, seed);
      if (resample_test) test = tab::random_downsample(test, target, seed + 1);
    }
    report << "   - Proportion is >= " << format_fixed(threshold * 100.0, 0)
           << "%, so " << (strategy == "smote" ? "SMOTE" : "random downsampling")
           << " was applied to the train dataset"
           << (resample_test ? " and the test dataset" : "") << ".\n";
    auto after = tab::class_proportions(train, target);
    report << "   - Train class proportions after resampling:";
    bool first = true;
    for (const auto& [value, fraction] : after) {
      report << (first ? " " : ", ") << format_stat_bound(value) << ": "
             << format_fixed(fraction * 100.0, 2) << "%";
      first = false;
    }
    report << ".\n";
  } else {
    report << "   - Proportion is below "
           << format_fixed(threshold * 100.0, 0)
           << "%; no resampling applied.\n";
  }

  // 5) save
  std::string train2_logical = logical_artifact(ctx, kTrain2Csv);
  std::string test2_logical = logical_artifact(ctx, kTest2Csv);
  std::string train2_path = ctx.resolve(train2_logical);
  std::string test2_path = ctx.resolve(test2_logical);
  tab::write_csv(train, train2_path);
  tab::write_csv(test, test2_path);
  report << "\n5. Transformed Data Location:\n";
  report << "   - Transformed train data saved as '" << train2_logical << "'.\n";
  report << "   - Transformed test data saved as '" << test2_logical << "'.\n";

  ToolResult result;
  result.observation = report.str();
  result.artifacts.push_back(Artifact{kTrain2Csv, train2_path});
  result.artifacts.push_back(Artifact{kTest2Csv, test2_path});
  return result;
}

ToolResult model_selection_tool(const ToolContext& ctx,
                                const nlohmann::json& input) {
  std::string train_path = require_string(input, "train_path");
  std::string target = input.value("target", ctx.params.value("target", ""));
  tab::Table train = load_table(ctx, train_path);
  ml::Dataset ds = ml::dataset_from_table(train, target);

  auto grids = grids_from_params(ctx.params);
  int folds = ctx.params.value("cv_folds", 5);
  ml::SelectionResult selection = ml::grid_search_select(
      grids, ds.x, ds.n_rows, ds.n_cols, ds.y, ds.feature_names, folds,
      ctx.seed);

  nlohmann::json j;
  j["family"] = ml::family_name(selection.family);
  j["params"] = selection.params;
  j["mean_accuracy"] = selection.mean_accuracy;
  j["rationale"] = selection.rationale;
  nlohmann::json table = nlohmann::json::array();
  for (const auto& cell : selection.table)
    table.push_back({{"family", ml::family_name(cell.family)},
                     {"params", cell.params},
                     {"fold_accuracy", cell.fold_accuracy},
                     {"mean_accuracy", cell.mean_accuracy}});
  j["cv_table"] = table;
  std::string json_path = ctx.resolve(logical_artifact(ctx, kSelectionJson));
  write_text_file(json_path, j.dump(2) + "\n");

  std::ostringstream obs;
  obs << "## Model Selection Report\n\n### Best Machine Learning Model: "
      << upper(ml::family_name(selection.family)) << "\n\n#### Rationale:\n"
      << selection.rationale << "\n\nCross-validated mean accuracy of the "
      << "selected configuration: " << format_fixed(selection.mean_accuracy, 4)
      << ". The full cross-validation table was saved with the selection "
      << "artifact.";

  ToolResult result;
  result.observation = obs.str();
  result.artifacts.push_back(Artifact{kSelectionJson, json_path});
  return result;
}

ToolResult hyperparameter_tuning_tool(const ToolContext& ctx,
                                      const nlohmann::json& input) {
  std::string train_path = require_string(input, "train_path");
  std::string target = input.value("target", ctx.params.value("target", ""));
  nlohmann::json selection = read_json_artifact(ctx, kSelectionJson);
  auto family = ml::family_from_name(selection.at("family").get<std::string>());
  if (!family)
    throw Error(ErrorCode::CorruptArtifact, "selection artifact names no family");

  ml::GridSpec grid;
  bool found = false;
  for (const auto& g : grids_from_params(ctx.params)) {
    if (g.family == *family) {
      grid = g;
      found = true;
      break;
    }
  }
  if (!found)
    throw Error(ErrorCode::EmptyGrid,
                std::string("no tuning grid configured for ") +
                    ml::family_name(*family));

  tab::Table train = load_table(ctx, train_path);
  ml::Dataset ds = ml::dataset_from_table(train, target);
  int folds = ctx.params.value("cv_folds", 5);
  ml::SelectionResult tuned = ml::tune_hyperparameters(
      grid, ds.x, ds.n_rows, ds.n_cols, ds.y, ds.feature_names, folds, ctx.seed);

  std::string txt;
  for (const auto& [name, value] : tuned.params)
    txt += name + "=" + format_metric(value) + "\n";
  std::string txt_logical = logical_artifact(ctx, kHyperParamsTxt);
  std::string txt_path = ctx.resolve(txt_logical);
  write_text_file(txt_path, txt);

  std::ostringstream obs;
  obs << "## Hyperparameter Tuning Report\n\n### Best Hyperparameters for "
      << upper(ml::family_name(*family)) << "\n";
  for (const auto& [name, value] : tuned.params)
    obs << "- " << name << ": " << format_metric(value) << "\n";
  obs << "\nThese hyperparameters were tuned with stratified " << folds
      << "-fold cross-validation over " << tuned.table.size()
      << " grid configurations (best mean accuracy "
      << format_fixed(tuned.mean_accuracy, 4) << "). Saved to '" << txt_logical
      << "'.";

  ToolResult result;
  result.observation = obs.str();
  result.artifacts.push_back(Artifact{kHyperParamsTxt, txt_path});
  return result;
}

ml::Hyperparams parse_hyper_params_txt(const std::string& text) {
  ml::Hyperparams params;
  for (const auto& line : split_lines(text)) {
    std::string t = trim(line);
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::CorruptArtifact,
                  "hyperparameter line '" + t + "' is not name=value");
    params[trim(t.substr(0, eq))] = std::stod(t.substr(eq + 1));
  }
  return params;
}

ToolResult model_training_tool(const ToolContext& ctx,
                               const nlohmann::json& input) {
  std::string train_path = require_string(input, "train_path");
  std::string model_logical = input.value(
      "model_path", logical_artifact(ctx, kModelJson));
  std::string target = input.value("target", ctx.params.value("target", ""));

  nlohmann::json selection = read_json_artifact(ctx, kSelectionJson);
  auto family = ml::family_from_name(selection.at("family").get<std::string>());
  if (!family)
    throw Error(ErrorCode::CorruptArtifact, "selection artifact names no family");
  std::string hp_path = ctx.resolve(logical_artifact(ctx, kHyperParamsTxt));
  if (!std::filesystem::exists(hp_path))
    throw Error(ErrorCode::DataMissing,
                "hyper_params.txt not found; run hyperparameter tuning first");
  ml::Hyperparams params = parse_hyper_params_txt(read_text_file(hp_path));

  tab::Table train = load_table(ctx, train_path);
  ml::Dataset ds = ml::dataset_from_table(train, target);
  ml::Estimator model = ml::fit(*family, params, ds.x, ds.n_rows, ds.n_cols,
                                ds.y, ds.feature_names, ctx.seed);
  std::string model_path = ctx.resolve(model_logical);
  ml::save_model(model, model_path);

  std::ostringstream obs;
  obs << "## Model Training Report\n\n### Training Conclusion\nThe selected "
      << ml::family_name(*family)
      << " model was trained on the full train dataset ('" << train_path
      << "', " << ds.n_rows << " rows, " << ds.n_cols
      << " features) using the tuned hyperparameters.\n\n### Location of the "
         "Saved Model\nThe trained model has been saved at '"
      << model_logical << "'.";

  ToolResult result;
  result.observation = obs.str();
  result.artifacts.push_back(Artifact{kModelJson, model_path});
  return result;
}

ToolResult model_evaluation_tool(const ToolContext& ctx,
                                 const nlohmann::json& input) {
  std::string model_logical =
      input.value("model_path", logical_artifact(ctx, kModelJson));
  std::string test_path = require_string(input, "test_path");
  std::string target = input.value("target", ctx.params.value("target", ""));

  ml::Estimator model = ml::load_model(ctx.resolve(model_logical));
  tab::Table test = load_table(ctx, test_path);
  ml::Dataset ds = ml::dataset_from_table(test, target);
  auto scores = ml::predict_scores(model, ds.x, ds.n_rows);
  std::vector<double> labels(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i)
    labels[i] = scores[i] >= 0.5 ? 1.0 : 0.0;
  ml::MetricsReport metrics = ml::compute_metrics(ds.y, labels, scores);

  nlohmann::json j;
  j["accuracy"] = metrics.accuracy;
  j["precision"] = metrics.precision;
  j["recall"] = metrics.recall;
  j["f1"] = metrics.f1;
  if (metrics.auc_label) j["auc"] = *metrics.auc_label;
  if (metrics.auc) j["auc_score"] = *metrics.auc;
  if (metrics.capture_rate) j["capture_rate"] = *metrics.capture_rate;
  j["confusion"] = {{"tp", metrics.confusion.tp},
                    {"fp", metrics.confusion.fp},
                    {"tn", metrics.confusion.tn},
                    {"fn", metrics.confusion.fn}};
  j["n_test"] = ds.n_rows;
  std::string json_path = ctx.resolve(logical_artifact(ctx, kMetricsJson));
  write_text_file(json_path, j.dump(2) + "\n");

  ToolResult result;
  result.observation =
      "Model Evaluation Metrics:\n\n" + metrics_block(metric_map(metrics)) +
      "\nThe evaluation of the trained model on '" + test_path +
      "' is complete; the metric values above were computed on " +
      std::to_string(ds.n_rows) + " test rows and saved with the run.";
  result.artifacts.push_back(Artifact{kMetricsJson, json_path});
  return result;
}

ToolResult documentation_tool(const ToolContext& ctx, const nlohmann::json&) {
  if (!ctx.memory)
    throw Error(ErrorCode::IncompleteCrewOutput,
                "documentation tool needs the crew memory stream");
  if (!ctx.params.contains("stage_tasks"))
    throw Error(ErrorCode::IncompleteCrewOutput, "no stage task map configured");

  std::ostringstream doc;
  doc << "# Modeling Documentation\n\nRecipe: " << ctx.params.value("name", "")
      << "; target variable: '" << ctx.params.value("target", "") << "'.\n";
  nlohmann::json sections = nlohmann::json::object();
  for (const auto& entry : ctx.params.at("stage_tasks")) {
    std::string stage = entry.at("stage").get<std::string>();
    std::string task_id = entry.at("task_id").get<std::string>();
    auto record = ctx.memory->latest_task_output(task_id);
    if (!record)
      throw Error(ErrorCode::IncompleteCrewOutput,
                  "no task output recorded for '" + task_id + "'");
    doc << "\n## " << stage << "\n\n" << record->content << "\n";
    sections[stage] = record->content;
  }
  std::string doc_logical = logical_artifact(ctx, kDocumentationTxt);
  std::string doc_path = ctx.resolve(doc_logical);
  write_text_file(doc_path, doc.str());

  nlohmann::json report;
  report["sections"] = sections;
  std::string metrics_path = ctx.resolve(logical_artifact(ctx, kMetricsJson));
  if (std::filesystem::exists(metrics_path)) {
    auto m = nlohmann::json::parse(read_text_file(metrics_path), nullptr, false);
    if (!m.is_discarded()) report["metrics"] = m;
  }
  report["artifact_files"] = {kTrain2Csv,     kTest2Csv,   kSelectionJson,
                              kHyperParamsTxt, kModelJson, kMetricsJson,
                              kDocumentationTxt};
  std::string report_path = ctx.resolve(logical_artifact(ctx, kModelingReportJson));
  write_text_file(report_path, report.dump(2) + "\n");

  ToolResult result;
  result.observation = doc.str();
  result.artifacts.push_back(Artifact{kDocumentationTxt, doc_path});
  result.artifacts.push_back(Artifact{kModelingReportJson, report_path});
  return result;
}

// ---------------------------------------------------------------------------
// MRM tools
// ---------------------------------------------------------------------------

ToolResult rag_compliance_tool(const ToolContext& ctx,
                               const nlohmann::json& input) {
  std::string guide_path = require_string(input, "guide_path");
  std::string doc_path = require_string(input, "doc_path");
  std::string guide_real = ctx.resolve(guide_path);
  std::string doc_real = ctx.resolve(doc_path);
  if (!std::filesystem::exists(guide_real))
    throw Error(ErrorCode::FileMissing, guide_real);
  if (!std::filesystem::exists(doc_real))
    throw Error(ErrorCode::FileMissing, doc_real);

  ComplianceReport report =
      check_compliance(read_text_file(doc_real), read_text_file(guide_real));
  std::string json_path = ctx.resolve(logical_artifact(ctx, kComplianceJson));
  write_text_file(json_path, report.to_json().dump(2) + "\n");

  std::ostringstream obs;
  obs << "## Compliance Check Report\nVerdict: "
      << (report.compliant ? "compliant" : "gaps-found") << "\n";
  for (const auto& s : report.stages)
    obs << "- " << s.stage << ": " << (s.pass() ? "pass" : "fail") << "\n";
  obs << "\n" << report.narrative;

  ToolResult result;
  result.observation = obs.str();
  result.artifacts.push_back(Artifact{kComplianceJson, json_path});
  return result;
}

ToolResult model_replication_tool(const ToolContext& ctx,
                                  const nlohmann::json& input) {
  std::string train_path = require_string(input, "train_path");
  std::string test_path = require_string(input, "test_path");
  std::string target = input.value("target", ctx.params.value("target", ""));
  std::string model_logical =
      input.value("model_path", logical_artifact(ctx, kModelJson));

  ml::Estimator reference = ml::load_model(ctx.resolve(model_logical));
  nlohmann::json metrics_json = read_json_artifact(ctx, kMetricsJson);
  auto reference_metrics = metrics_from_json(metrics_json);

  tab::Table train = load_table(ctx, train_path);
  tab::Table test = load_table(ctx, test_path);
  bool cross_engine = ctx.params.value("cross_engine", false);
  ReplicationReport report = replicate_model(train, test, target, reference,
                                             reference_metrics, cross_engine);
  std::string json_path = ctx.resolve(logical_artifact(ctx, kReplicationJson));
  write_text_file(json_path, report.to_json().dump(2) + "\n");

  std::ostringstream obs;
  obs << "Model Replication Report:\n\nThe "
      << ml::family_name(reference.family)
      << " model was independently retrained with the modeling team's "
         "hyperparameters and seed, then evaluated on the transformed test "
         "data.\n\nModel Evaluation Metrics:\n"
      << metrics_block(report.replicated) << "\nResult:\n";
  nlohmann::json result_dict;
  for (const auto& [key, value] : report.replicated) result_dict[key] = value;
  obs << result_dict.dump(2) << "\n\n" << report.narrative;

  ToolResult result;
  result.observation = obs.str();
  result.artifacts.push_back(Artifact{kReplicationJson, json_path});
  return result;
}

ToolResult conceptual_soundness_tool(const ToolContext& ctx,
                                     const nlohmann::json& input) {
  std::string test_path = require_string(input, "test_path");
  std::string target = input.value("target", ctx.params.value("target", ""));
  std::string model_logical =
      input.value("model_path", logical_artifact(ctx, kModelJson));

  ml::Estimator model = ml::load_model(ctx.resolve(model_logical));
  tab::Table test = load_table(ctx, test_path);
  std::vector<std::string> plausible =
      ctx.params.value("plausible_features", std::vector<std::string>{});
  double min_accuracy = ctx.params.value("min_accuracy_benchmark", 0.70);
  SoundnessReport report =
      assess_soundness(model, test, target, plausible, min_accuracy, ctx.seed);
  std::string json_path = ctx.resolve(logical_artifact(ctx, kSoundnessJson));
  write_text_file(json_path, report.to_json().dump(2) + "\n");

  nlohmann::json top = nlohmann::json::object();
  for (const auto& name : report.top_features)
    top[name] = report.importance.scores.at(name);
  std::ostringstream obs;
  obs << nlohmann::json{{"top_10_features", top}}.dump(2) << "\n\n"
      << report.narrative;

  ToolResult result;
  result.observation = obs.str();
  result.artifacts.push_back(Artifact{kSoundnessJson, json_path});
  return result;
}

ToolResult outcome_analysis_tool(const ToolContext& ctx,
                                 const nlohmann::json& input) {
  std::string test_path = require_string(input, "test_path");
  std::string target = input.value("target", ctx.params.value("target", ""));
  std::string model_logical =
      input.value("model_path", logical_artifact(ctx, kModelJson));

  ml::Estimator model = ml::load_model(ctx.resolve(model_logical));
  tab::Table test = load_table(ctx, test_path);

  OutcomeOptions options;
  if (ctx.params.contains("perturb_mode")) {
    auto mode = shift_mode_from_name(ctx.params.at("perturb_mode").get<std::string>());
    if (!mode) throw Error(ErrorCode::BadValue, "unknown perturbation mode");
    options.mode = *mode;
  }
  options.magnitude = ctx.params.value("perturb_magnitude", 1.0);
  options.outlier_magnitude = ctx.params.value("outlier_magnitude", 1000.0);
  options.drop_flag_threshold = ctx.params.value("drop_flag_threshold", 0.05);
  if (ctx.params.contains("outlier_rows"))
    options.outlier_rows =
        ctx.params.at("outlier_rows").get<std::vector<std::size_t>>();

  OutcomeReport report = analyze_outcomes(model, test, target, ctx.seed, options);
  std::string json_path = ctx.resolve(logical_artifact(ctx, kOutcomeJson));
  write_text_file(json_path, report.to_json().dump(2) + "\n");

  nlohmann::json j = report.to_json();
  std::ostringstream obs;
  obs << nlohmann::json{{"outcome_analysis_report", report.narrative},
                        {"result", j.at("result")}}
             .dump(2);

  ToolResult result;
  result.observation = obs.str();
  result.artifacts.push_back(Artifact{kOutcomeJson, json_path});
  return result;
}

ToolResult mrm_documentation_tool(const ToolContext& ctx, const nlohmann::json&) {
  auto require_artifact = [&](const char* file) -> nlohmann::json {
    std::string path = ctx.resolve(logical_artifact(ctx, file));
    if (!std::filesystem::exists(path))
      throw Error(ErrorCode::MissingSubReport,
                  std::string(file) + " missing; run the MRM stages first");
    auto j = nlohmann::json::parse(read_text_file(path), nullptr, false);
    if (j.is_discarded())
      throw Error(ErrorCode::CorruptArtifact, path + " is not valid JSON");
    return j;
  };

  MrmReport report;
  report.compliance = ComplianceReport::from_json(require_artifact(kComplianceJson));
  report.replication =
      ReplicationReport::from_json(require_artifact(kReplicationJson));
  report.soundness = SoundnessReport::from_json(require_artifact(kSoundnessJson));
  report.outcome = OutcomeReport::from_json(require_artifact(kOutcomeJson));
  report.overall_pass = report.compliance.compliant &&
                        report.replication.replicated_ok &&
                        report.soundness.pass();

  std::string text = render_mrm_report(report);
  std::string txt_path = ctx.resolve(logical_artifact(ctx, kMrmReportTxt));
  write_text_file(txt_path, text);

  nlohmann::json result_json;
  result_json["overall"] = report.overall_pass ? "pass" : "flagged";
  result_json["compliance"] = report.compliance.to_json();
  result_json["replication"] = report.replication.to_json();
  result_json["soundness"] = report.soundness.to_json();
  result_json["outcome"] = report.outcome.to_json();
  std::string json_path = ctx.resolve(logical_artifact(ctx, kMrmResultJson));
  write_text_file(json_path, result_json.dump(2) + "\n");

  ToolResult result;
  result.observation = text;
  result.artifacts.push_back(Artifact{kMrmReportTxt, txt_path});
  result.artifacts.push_back(Artifact{kMrmResultJson, json_path});
  return result;
}

}  // namespace

core::ToolCatalog standard_catalog() {
  core::ToolCatalog catalog;
  catalog.add(Tool{kEdaToolId,
                   "Exploratory Data Analysis Tool",
                   "Computes dataset shape, missing values, class balance, "
                   "descriptive statistics, skewness, outliers, and the "
                   "correlation matrix, and renders a summary report.",
                   {{"csv_path", "path of the CSV file to analyze"},
                    {"target", "name of the target column"}},
                   eda_tool});
  catalog.add(Tool{kFeatureEngineeringToolId,
                   "Feature Engineering Tool",
                   "Drops configured columns, label encodes categorical "
                   "features (fit on train), KNN-imputes missing values, "
                   "checks class imbalance and resamples when triggered, and "
                   "writes train2/test2 CSVs.",
                   {{"train_path", "path of the train CSV"},
                    {"test_path", "path of the test CSV"},
                    {"target", "name of the target column"}},
                   feature_engineering_tool});
  catalog.add(Tool{kModelSelectionToolId,
                   "Model Selection Tool",
                   "Runs stratified cross-validated grid search over the "
                   "configured candidate model families and reports the best "
                   "model with its rationale.",
                   {{"train_path", "path of the transformed train CSV"},
                    {"target", "name of the target column"}},
                   model_selection_tool});
  catalog.add(Tool{kHyperparameterTuningToolId,
                   "Hyperparameter Tuning Tool",
                   "Tunes the selected family's hyperparameter grid with "
                   "cross-validation and saves the best values as a text "
                   "artifact.",
                   {{"train_path", "path of the transformed train CSV"},
                    {"target", "name of the target column"}},
                   hyperparameter_tuning_tool});
  catalog.add(Tool{kModelTrainingToolId,
                   "Model Training Tool",
                   "Trains the selected model with the tuned hyperparameters "
                   "on the transformed train data and saves the model "
                   "artifact.",
                   {{"train_path", "path of the transformed train CSV"},
                    {"model_path", "where to save the trained model"},
                    {"target", "name of the target column"}},
                   model_training_tool});
  catalog.add(Tool{kModelEvaluationToolId,
                   "Model Evaluation Tool",
                   "Evaluates the trained model on the transformed test data "
                   "and reports accuracy, F1-score, recall, precision, AUC, "
                   "and the top capture rate.",
                   {{"model_path", "path of the trained model artifact"},
                    {"test_path", "path of the transformed test CSV"},
                    {"target", "name of the target column"}},
                   model_evaluation_tool});
  catalog.add(Tool{kDocumentationToolId,
                   "Documentation Writer Tool",
                   "Gathers every stage's task output from the crew memory "
                   "and renders the technical modeling documentation.",
                   {},
                   documentation_tool});
  catalog.add(Tool{kRagComplianceToolId,
                   "Retrieval Augmented Generation(RAG) Tool",
                   "Chunks the organizational modeling guide, retrieves the "
                   "passages relevant to each pipeline stage, and checks the "
                   "modeling documentation for compliance.",
                   {{"guide_path", "path of the organizational modeling guide"},
                    {"doc_path", "path of the modeling documentation"}},
                   rag_compliance_tool});
  catalog.add(Tool{kModelReplicationToolId,
                   "Model Replication Tool",
                   "Retrains the reported model family with the reported "
                   "hyperparameters and seed, evaluates it, and compares "
                   "every metric with the modeling team's values.",
                   {{"train_path", "path of the transformed train CSV"},
                    {"test_path", "path of the transformed test CSV"},
                    {"model_path", "path of the trained model artifact"},
                    {"target", "name of the target column"}},
                   model_replication_tool});
  catalog.add(Tool{kConceptualSoundnessToolId,
                   "Conceptual Soundness Tool",
                   "Computes feature importance with the method appropriate "
                   "to the model family and checks benchmarks, plausibility "
                   "of the top features, and method fit.",
                   {{"model_path", "path of the trained model artifact"},
                    {"test_path", "path of the transformed test CSV"},
                    {"target", "name of the target column"}},
                   conceptual_soundness_tool});
  catalog.add(Tool{kOutcomeAnalysisToolId,
                   "Outcome Analysis Tool",
                   "Perturbs the test data (distribution shift and "
                   "adversarial outliers), re-evaluates the model, and "
                   "reports the degradation.",
                   {{"model_path", "path of the trained model artifact"},
                    {"test_path", "path of the transformed test CSV"},
                    {"target", "name of the target column"}},
                   outcome_analysis_tool});
  catalog.add(Tool{kMrmDocumentationToolId,
                   "MRM Documentation Tool",
                   "Assembles the compliance, replication, soundness, and "
                   "outcome analyses into the model risk management report.",
                   {},
                   mrm_documentation_tool});
  return catalog;
}

}  // namespace crewml::crews
