#include "crewml/crews/runner.hpp"

#include <algorithm>
#include <filesystem>
#include <map>

#include "crewml/crews/mrm_crew.hpp"
#include "crewml/crews/tools.hpp"
#include "crewml/tab/ops.hpp"
#include "crewml/util/text.hpp"

namespace crewml::crews {

namespace fs = std::filesystem;

const char* run_mode_name(RunMode mode) {
  switch (mode) {
    case RunMode::Live: return "live";
    case RunMode::Replay: return "replay";
    case RunMode::Record: return "record";
    case RunMode::Scripted: return "scripted";
  }
  return "unknown";
}

namespace {

struct BackendBundle {
  std::unique_ptr<llm::ChatBackend> scripted_or_live;
  std::unique_ptr<llm::ChatBackend> active;  // what the crew talks to
  llm::Transcript transcript;                // populated in record mode
  llm::LiveBackend* live = nullptr;
};

BackendBundle make_backend(const CrewBundle& bundle, const RunOptions& options) {
  BackendBundle out;
  switch (options.mode) {
    case RunMode::Replay: {
      if (options.transcript_path.empty())
        throw Error(ErrorCode::MissingFlag, "replay mode needs a transcript");
      out.active = std::make_unique<llm::ReplayBackend>(
          llm::Transcript::load(options.transcript_path));
      break;
    }
    case RunMode::Scripted: {
      out.active = std::make_unique<ScriptedCrewBackend>(
          bundle.spec.manager->role, bundle.plans);
      break;
    }
    case RunMode::Record: {
      if (options.transcript_path.empty())
        throw Error(ErrorCode::MissingFlag, "record mode needs a transcript");
      if (options.record_scripted) {
        out.scripted_or_live = std::make_unique<ScriptedCrewBackend>(
            bundle.spec.manager->role, bundle.plans);
      } else {
        auto live = std::make_unique<llm::LiveBackend>(llm::LiveBackend::from_env());
        out.live = live.get();
        out.scripted_or_live = std::move(live);
      }
      out.active = std::make_unique<llm::RecordingBackend>(
          *out.scripted_or_live, out.transcript);
      break;
    }
    case RunMode::Live: {
      auto live = std::make_unique<llm::LiveBackend>(llm::LiveBackend::from_env());
      out.live = live.get();
      out.active = std::move(live);
      break;
    }
  }
  return out;
}

core::CrewOutput run_bundle(const CrewBundle& bundle, const RunOptions& options,
                            core::ToolContext tool_context,
                            const std::string& output_dir,
                            std::uint64_t* live_calls) {
  core::ToolCatalog catalog = standard_catalog();
  core::Crew crew = core::Crew::build(bundle.spec, catalog);

  memory::MemoryStore memory(4096);
  std::unique_ptr<core::Clock> clock;
  if (options.mode == RunMode::Live || options.mode == RunMode::Record)
    clock = std::make_unique<core::SystemClock>();
  else
    clock = std::make_unique<core::LogicalClock>();
  core::RunLog run_log(*clock);

  BackendBundle backend = make_backend(bundle, options);

  tool_context.seed = options.seed;
  tool_context.memory = &memory;

  core::CrewDeps deps;
  deps.backend = backend.active.get();
  deps.memory = &memory;
  deps.catalog = &catalog;
  deps.tool_context = std::move(tool_context);
  deps.run_log = &run_log;
  deps.clock = clock.get();

  core::CrewOutput output;
  try {
    output = crew.run(bundle.inputs, deps);
  } catch (...) {
    run_log.save(output_dir + "/" + kRunLogJsonl);
    write_text_file(output_dir + "/" + kMemoryDumpJsonl, memory.dump_jsonl());
    throw;
  }
  run_log.save(output_dir + "/" + kRunLogJsonl);
  write_text_file(output_dir + "/" + kMemoryDumpJsonl, memory.dump_jsonl());
  if (options.mode == RunMode::Record)
    backend.transcript.save(options.transcript_path);
  if (live_calls && backend.live) *live_calls = backend.live->calls();
  return output;
}

}  // namespace

tab::Table build_card_table(const tab::Table& applications,
                            const tab::Table& credit_records) {
  tab::Table credit = tab::map_target_status(credit_records, "STATUS", "TARGET");
  std::size_t id_col = credit.require_column("ID");
  std::size_t target_col = credit.require_column("TARGET");
  std::size_t months_col = credit.require_column("MONTHS_BALANCE");

  // per-ID worst status and account age, first-appearance order
  std::vector<double> ids;
  std::map<double, std::size_t> index_of;
  std::vector<double> worst, oldest;
  for (std::size_t r = 0; r < credit.n_rows(); ++r) {
    double id = credit.column(id_col).num[r];
    auto [it, inserted] = index_of.emplace(id, ids.size());
    if (inserted) {
      ids.push_back(id);
      worst.push_back(0.0);
      oldest.push_back(0.0);
    }
    std::size_t i = it->second;
    worst[i] = std::max(worst[i], credit.column(target_col).num[r]);
    oldest[i] = std::min(oldest[i], credit.column(months_col).num[r]);
  }

  tab::Table aggregated;
  tab::Column id_column;
  id_column.name = "ID";
  id_column.num = ids;
  aggregated.add_column(std::move(id_column));
  tab::Column age;
  age.name = "ACCOUNT_AGE";
  age.num.resize(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) age.num[i] = std::abs(oldest[i]);
  aggregated.add_column(std::move(age));
  tab::Column target;
  target.name = "TARGET";
  target.num = worst;
  aggregated.add_column(std::move(target));

  tab::Table merged =
      tab::merge_on_key(tab::dedupe(applications), aggregated, "ID");
  return tab::dedupe(merged);
}

RunResult run_recipe(const Recipe& recipe, const RunOptions& options) {
  for (const auto& [logical, real] : recipe.inputs)
    if (!fs::exists(real))
      throw Error(ErrorCode::DataMissing,
                  "input '" + logical + "' not found at " + real);
  if (recipe.output_dir.empty())
    throw Error(ErrorCode::InvalidRecipe, "recipe has no output directory");
  fs::create_directories(recipe.output_dir);

  CrewBundle bundle = build_modeling_crew(recipe);

  core::ToolContext ctx;
  ctx.output_dir = recipe.output_dir;
  ctx.logical_prefix = recipe.alias;
  ctx.path_map = recipe.inputs;
  ctx.params = recipe.to_params();
  nlohmann::json stage_tasks = nlohmann::json::array();
  for (const auto& [task_id, stage] : bundle.stage_tasks)
    stage_tasks.push_back({{"task_id", task_id}, {"stage", stage}});
  ctx.params["stage_tasks"] = stage_tasks;
  if (options.param_overrides.is_object())
    for (const auto& [key, value] : options.param_overrides.items())
      ctx.params[key] = value;

  // card: aggregate + merge the two raw tables before anything else
  if (recipe.card_merge) {
    tab::Table applications =
        tab::load_csv(ctx.resolve("card/application_record.csv"));
    tab::Table credit = tab::load_csv(ctx.resolve("card/credit_record.csv"));
    tab::Table merged = build_card_table(applications, credit);
    std::string merged_path = recipe.output_dir + "/merged.csv";
    tab::write_csv(merged, merged_path);
    ctx.path_map[recipe.raw_logical] = merged_path;
  }

  // split precedes all feature engineering (leakage guard)
  {
    tab::Table raw = tab::load_csv(ctx.resolve(recipe.raw_logical));
    auto [train, test] =
        tab::train_test_split(raw, ctx.params.value("split_ratio", 0.8),
                              options.seed);
    tab::write_csv(train, recipe.output_dir + "/" + kTrainCsv);
    tab::write_csv(test, recipe.output_dir + "/" + kTestCsv);
  }

  write_text_file(recipe.output_dir + "/recipe.json", ctx.params.dump(2) + "\n");

  RunResult result;
  result.crew_output = run_bundle(bundle, options, ctx, recipe.output_dir,
                                  &result.live_calls);
  result.documentation = render_documentation(result.crew_output, recipe);
  result.exit_code = 0;
  return result;
}

MrmRunResult run_mrm(const std::string& modeling_dir,
                     const std::string& guide_path,
                     const std::string& output_dir, const RunOptions& options) {
  std::string recipe_json_path = modeling_dir + "/recipe.json";
  if (!fs::exists(recipe_json_path))
    throw Error(ErrorCode::DataMissing,
                "no recipe.json in " + modeling_dir +
                    "; run the modeling crew first");
  auto params = nlohmann::json::parse(read_text_file(recipe_json_path));
  std::string alias = params.value("alias", "run");
  std::string target = params.value("target", "");

  fs::create_directories(output_dir);
  std::string guide = guide_path;
  if (guide.empty()) {
    guide = output_dir + "/modeling_guide.txt";
    write_default_guide(guide);
  }
  if (!fs::exists(guide)) throw Error(ErrorCode::FileMissing, guide);

  CrewBundle bundle = build_mrm_crew(alias, target);

  core::ToolContext ctx;
  ctx.output_dir = output_dir;
  ctx.logical_prefix = alias;
  ctx.params = params;
  if (options.param_overrides.is_object())
    for (const auto& [key, value] : options.param_overrides.items())
      ctx.params[key] = value;
  // modeling artifacts resolve into the (read-only) modeling directory
  for (const char* file : {kTrain2Csv, kTest2Csv, kModelJson, kMetricsJson,
                           kSelectionJson, kHyperParamsTxt, kDocumentationTxt})
    ctx.path_map[alias + "/" + file] = modeling_dir + "/" + file;
  ctx.path_map[alias + "/modeling_guide.txt"] = guide;

  MrmRunResult result;
  result.crew_output = run_bundle(bundle, options, ctx, output_dir,
                                  &result.live_calls);

  std::string verdict_path = output_dir + "/" + kMrmResultJson;
  if (!fs::exists(verdict_path))
    throw Error(ErrorCode::MissingSubReport, "MRM run produced no result file");
  auto verdict = nlohmann::json::parse(read_text_file(verdict_path));
  result.overall_pass = verdict.value("overall", "") == "pass";
  result.exit_code = result.overall_pass ? 0 : 1;
  return result;
}

}  // namespace crewml::crews
