#include "crewml/crews/modeling.hpp"

#include <sstream>

#include "crewml/crews/mrm.hpp"
#include "crewml/crews/tools.hpp"
#include "crewml/util/error.hpp"

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

std::string feature_engineering_instruction(const Recipe& recipe) {
  std::ostringstream out;
  out << "Preprocess the test and train dataset located on '{alias}/test.csv' "
         "and '{alias}/train.csv' respectively.\nKindly follow the procedure "
         "below and handle the test and train data separately:";
  int step = 1;
  if (!recipe.drop_columns.empty()) {
    out << "\n  " << step++ << ") Drop the feature";
    if (recipe.drop_columns.size() > 1) out << "s";
    for (std::size_t i = 0; i < recipe.drop_columns.size(); ++i)
      out << (i ? ", " : " ") << "'" << recipe.drop_columns[i] << "'";
    out << " on both the train and test dataset.";
  }
  out << "\n  " << step++
      << ") Perform label encoding only on the categorical features with "
         "fit_transform and transform methods, respectively.";
  out << "\n  " << step++
      << ") Use K-Nearest Neighbors (KNN) imputation to fill missing values "
         "on the train and test dataset with fit_transform and transform "
         "methods, respectively.";
  if (recipe.strategy == ImbalanceStrategy::Smote) {
    out << "\n  " << step++
        << ") Check the unique values in the target variable named {target} "
           "to determine if the proportion of any of the classes is equal to "
           "or greater than 60%. If so, perform SMOTE Synthetic Minority "
           "Over-sampling Technique on the train dataset"
        << (recipe.resample_test ? " and the test dataset" : "")
        << " using the fit_resample method.";
  } else {
    out << "\n  " << step++
        << ") Check the unique values in the target variable named {target} "
           "to determine if the proportion of any of the classes is equal to "
           "or greater than 60%. If so, balance the classes with random "
           "downsampling of the majority class on the train dataset"
        << (recipe.resample_test ? " and the test dataset" : "") << ".";
  }
  out << "\n  " << step++
      << ") Save the new transformed test and train data in the directory "
         "'{alias}/' as 'test2.csv' and 'train2.csv' respectively.";
  return out.str();
}

}  // namespace

CrewBundle build_modeling_crew(const Recipe& recipe) {
  if (recipe.target.empty() || recipe.alias.empty() || recipe.inputs.empty())
    throw Error(ErrorCode::InvalidRecipe,
                "recipe needs a target, an alias, and at least one input");

  CrewBundle bundle;
  core::CrewSpec& spec = bundle.spec;
  spec.process = core::ProcessMode::Hierarchical;

  spec.manager = agent(
      "Data Science Manager",
      "Manage the overall modeling pipeline with specific instructions.",
      "An expert skilled in managing a modeling team for " + recipe.name +
          " use cases, providing overarching guidance so no agent deviates "
          "from its assigned role.",
      {core::kDelegateToolId}, /*delegate=*/true, /*max_iterations=*/4);

  spec.agents = {
      agent("Senior Data Scientist I",
            "Conduct a detailed exploratory data analysis.", "EDA expert.",
            {kEdaToolId}),
      agent("Senior Data Scientist II",
            "Preprocess the data for model training.",
            "Skilled feature engineer.", {kFeatureEngineeringToolId}),
      agent("Machine Learning Engineer I",
            "Select the best machine learning model.",
            "Expert in grid search and random search model selection.",
            {kModelSelectionToolId}),
      agent("Senior Machine Learning Engineer I",
            "Get the optimal hyperparameters for the selected model.",
            "Hyperparameter tuning expert.", {kHyperparameterTuningToolId}),
      agent("Senior Machine Learning Engineer II",
            "Train the selected model with the best performing "
            "hyperparameters.",
            "Machine learning training expert.", {kModelTrainingToolId}),
      agent("Senior Machine Learning Engineer III",
            "Evaluate the trained model.", "Model evaluation expert.",
            {kModelEvaluationToolId}),
      agent("Documentation Writer",
            "Write technical documentation for all the tasks performed by "
            "the modeling agents.",
            "Skilled technical writer with a deep understanding of data "
            "science workflows.",
            {kDocumentationToolId}),
  };

  auto task = [](std::string id, std::string description,
                 std::string expected, std::string assigned,
                 std::vector<std::string> context) {
    TaskSpec t;
    t.id = std::move(id);
    t.description = std::move(description);
    t.expected_output = std::move(expected);
    t.assigned_agent = std::move(assigned);
    t.context_task_ids = std::move(context);
    return t;
  };

  spec.tasks = {
      task("t1_eda",
           "Conduct a detailed exploratory data analysis on the provided "
           "dataset located at '{csv_path}'. Identify missing values, class "
           "imbalances, categorical variables, and outliers, show the data "
           "distribution of the features including skewness, and the "
           "correlation across features. Show the result in a summarized and "
           "easy-to-read format.",
           "A comprehensive exploratory data analysis report.",
           "Senior Data Scientist I", {}),
      task("t2_feature_engineering", feature_engineering_instruction(recipe),
           "A feature engineering report listing every transformation "
           "applied and where the transformed data was saved.",
           "Senior Data Scientist II", {"t1_eda"}),
      task("t3_model_selection",
           "Select the best machine learning model using the GridSearchCV "
           "method on the train dataset located at '{alias}/train2.csv'. The "
           "target variable is named '{target}'. Give the rationale for the "
           "selected model.",
           "The selected model family and the rationale for the selection.",
           "Machine Learning Engineer I", {"t2_feature_engineering"}),
      task("t4_hyperparameter_tuning",
           "Tune the hyperparameters of the selected model. Use only 5-fold "
           "cross-validation on the train dataset located at "
           "'{alias}/train2.csv' with the target variable '{target}'. Save "
           "the result as a txt file with the name 'hyper_params.txt' in the "
           "directory '{alias}/'.",
           "The best hyperparameters as a name:value list.",
           "Senior Machine Learning Engineer I", {"t3_model_selection"}),
      task("t5_model_training",
           "Train the selected model from the model selection agent.\nData:\n"
           "- Use the train data provided dataset located at "
           "'{alias}/train2.csv'.\nTraining:\n- Train the selected machine "
           "learning model using the train dataset and the best "
           "hyperparameters.\nSaving:\n- Save the trained model in the "
           "directory '{alias}/' as 'model.json'.",
           "Confirmation of training and the saved model location.",
           "Senior Machine Learning Engineer II",
           {"t3_model_selection", "t4_hyperparameter_tuning"}),
      task("t6_model_evaluation",
           "Evaluate the performance of the trained model located at "
           "'{alias}/model.json'. The test data for this evaluation is "
           "located at '{alias}/test2.csv'. The result should contain all "
           "the performance metrics accuracy, F1-score, recall, precision, "
           "top capture rate, and auc. The target feature is named "
           "'{target}'.",
           "All performance metrics of the trained model on the test data.",
           "Senior Machine Learning Engineer III", {"t5_model_training"}),
      task("t7_documentation",
           "Write the technical documentation for all the tasks performed "
           "by the modeling agents, covering Exploratory Data Analysis, "
           "Feature Engineering, Model Selection, Hyperparameter Tuning, "
           "Model Training, and Model Evaluation, in that order. Save it in "
           "the directory '{alias}/' as 'crew_documentation.txt'.",
           "The complete technical documentation of the modeling pipeline.",
           "Documentation Writer",
           {"t1_eda", "t2_feature_engineering", "t3_model_selection",
            "t4_hyperparameter_tuning", "t5_model_training",
            "t6_model_evaluation"}),
  };

  bundle.inputs = {{"csv_path", recipe.raw_logical},
                   {"alias", recipe.alias},
                   {"target", recipe.target}};

  auto logical = [&](const char* file) { return recipe.alias + "/" + std::string(file); };
  bundle.plans = {
      {"t1_eda",
       {"Senior Data Scientist I", kEdaToolId,
        {{"csv_path", recipe.raw_logical}, {"target", recipe.target}}}},
      {"t2_feature_engineering",
       {"Senior Data Scientist II", kFeatureEngineeringToolId,
        {{"train_path", logical(kTrainCsv)},
         {"test_path", logical(kTestCsv)},
         {"target", recipe.target}}}},
      {"t3_model_selection",
       {"Machine Learning Engineer I", kModelSelectionToolId,
        {{"train_path", logical(kTrain2Csv)}, {"target", recipe.target}}}},
      {"t4_hyperparameter_tuning",
       {"Senior Machine Learning Engineer I", kHyperparameterTuningToolId,
        {{"train_path", logical(kTrain2Csv)}, {"target", recipe.target}}}},
      {"t5_model_training",
       {"Senior Machine Learning Engineer II", kModelTrainingToolId,
        {{"train_path", logical(kTrain2Csv)},
         {"model_path", logical(kModelJson)},
         {"target", recipe.target}}}},
      {"t6_model_evaluation",
       {"Senior Machine Learning Engineer III", kModelEvaluationToolId,
        {{"model_path", logical(kModelJson)},
         {"test_path", logical(kTest2Csv)},
         {"target", recipe.target}}}},
      {"t7_documentation", {"Documentation Writer", kDocumentationToolId,
                            nlohmann::json::object()}},
  };

  const auto& stages = pipeline_stages();
  bundle.stage_tasks = {{"t1_eda", stages[0]},
                        {"t2_feature_engineering", stages[1]},
                        {"t3_model_selection", stages[2]},
                        {"t4_hyperparameter_tuning", stages[3]},
                        {"t5_model_training", stages[4]},
                        {"t6_model_evaluation", stages[5]}};
  return bundle;
}

std::string render_documentation(const core::CrewOutput& output,
                                 const Recipe& recipe) {
  if (output.task_outputs.size() < 7)
    throw Error(ErrorCode::IncompleteCrewOutput,
                "expected 7 task outputs, have " +
                    std::to_string(output.task_outputs.size()));
  std::ostringstream doc;
  doc << "# Modeling Documentation\n\nRecipe: " << recipe.name
      << "; target variable: '" << recipe.target << "'.\n";
  const auto& stages = pipeline_stages();
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const auto& task = output.task_outputs[i];
    if (task.raw_text.empty())
      throw Error(ErrorCode::IncompleteCrewOutput,
                  "task '" + task.task_id + "' produced no output");
    doc << "\n## " << stages[i] << "\n\n" << task.raw_text << "\n";
  }
  return doc.str();
}

}  // namespace crewml::crews
