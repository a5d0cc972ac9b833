#include "crewml/cli/run.hpp"

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "crewml/cli/synth.hpp"
#include "crewml/crews/tools.hpp"
#include "crewml/eda/eda.hpp"
#include "crewml/util/text.hpp"

namespace crewml::cli {

namespace fs = std::filesystem;

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::map<std::string, std::string> out;
  if (!fs::exists(path)) throw Error(ErrorCode::FileMissing, path);
  for (const auto& raw : split_lines(read_text_file(path))) {
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::BadValue,
                  "config line '" + line + "' is not key=value");
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

namespace {

crews::RunMode parse_mode(const std::string& name) {
  if (name == "live") return crews::RunMode::Live;
  if (name == "replay") return crews::RunMode::Replay;
  if (name == "record") return crews::RunMode::Record;
  if (name == "scripted") return crews::RunMode::Scripted;
  throw Error(ErrorCode::BadValue,
              "mode must be live, replay, record, or scripted; got '" + name +
                  "'");
}

void apply_set_overrides(RunConfig& config,
                         const std::vector<std::string>& sets) {
  for (const auto& entry : sets) {
    auto eq = entry.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::BadValue, "--set needs key=value, got '" + entry + "'");
    std::string key = trim(entry.substr(0, eq));
    std::string value = trim(entry.substr(eq + 1));
    auto parsed = nlohmann::json::parse(value, nullptr, false);
    if (parsed.is_discarded())
      config.overrides[key] = value;
    else
      config.overrides[key] = parsed;
  }
}

}  // namespace

RunConfig parse_cli(const std::vector<std::string>& args) {
  // a config file supplies defaults; explicit flags override them
  std::map<std::string, std::string> file_defaults;
  for (std::size_t i = 0; i + 1 < args.size(); ++i)
    if (args[i] == "--config") file_defaults = parse_config_file(args[i + 1]);
  auto def = [&](const char* key, const std::string& fallback) {
    auto it = file_defaults.find(key);
    return it == file_defaults.end() ? fallback : it->second;
  };

  RunConfig config;
  std::string mode_name = def("mode", "");
  std::string seed_text = def("seed", "");
  std::string config_path;
  std::vector<std::string> sets;

  CLI::App app{"crewml"};
  app.require_subcommand(1);
  app.add_option("--config", config_path, "flat key=value config file");

  auto* eda_cmd = app.add_subcommand("eda", "run exploratory data analysis");
  std::string eda_csv = def("csv", "");
  std::string eda_target = def("target", "");
  std::string eda_out = def("out", "");
  eda_cmd->add_option("--csv", eda_csv, "dataset CSV path");
  eda_cmd->add_option("--target", eda_target, "target column name");
  eda_cmd->add_option("--out", eda_out, "output directory");
  eda_cmd->add_option("--config", config_path, "flat key=value config file");

  auto* model_cmd = app.add_subcommand("model", "modeling crew");
  auto* model_run = model_cmd->add_subcommand("run", "run a modeling recipe");
  std::string recipe = def("recipe", "");
  std::string csv = def("csv", "");
  std::string application_csv = def("application_csv", "");
  std::string credit_csv = def("credit_csv", "");
  std::string out_dir = def("out", "");
  std::string transcript = def("transcript", "");
  model_run->add_option("--recipe", recipe, "fraud|fraud-smote|card|credit|synthetic");
  model_run->add_option("--csv", csv, "dataset CSV path");
  model_run->add_option("--application-csv", application_csv,
                        "card application records CSV");
  model_run->add_option("--credit-csv", credit_csv, "card credit records CSV");
  model_run->add_option("--out", out_dir, "output directory");
  model_run->add_option("--seed", seed_text, "global seed");
  model_run->add_option("--mode", mode_name, "live|replay|record|scripted");
  model_run->add_option("--transcript", transcript, "replay transcript path");
  model_run->add_option("--set", sets, "override recipe parameter key=value");
  model_run->add_option("--config", config_path, "flat key=value config file");

  auto* mrm_cmd = app.add_subcommand("mrm", "model risk management crew");
  auto* mrm_run = mrm_cmd->add_subcommand("run", "validate a modeling run");
  std::string modeling_dir = def("modeling_dir", "");
  std::string guide = def("guide", "");
  mrm_run->add_option("--modeling-dir", modeling_dir,
                      "modeling crew output directory");
  mrm_run->add_option("--guide", guide, "organizational modeling guide path");
  mrm_run->add_option("--out", out_dir, "output directory");
  mrm_run->add_option("--seed", seed_text, "global seed");
  mrm_run->add_option("--mode", mode_name, "live|replay|record|scripted");
  mrm_run->add_option("--transcript", transcript, "replay transcript path");
  mrm_run->add_option("--set", sets, "override parameter key=value");
  mrm_run->add_option("--config", config_path, "flat key=value config file");

  auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic dataset");
  std::string rows_text = def("rows", "5000");
  std::string numeric_text = def("numeric", "6");
  std::string categorical_text = def("categorical", "2");
  std::string imbalance_text = def("imbalance", "0.78");
  std::string signal_text = def("signal", "3");
  synth_cmd->add_option("--rows", rows_text, "row count (>= 100)");
  synth_cmd->add_option("--numeric", numeric_text, "numeric feature count");
  synth_cmd->add_option("--categorical", categorical_text,
                        "categorical feature count");
  synth_cmd->add_option("--imbalance", imbalance_text,
                        "majority fraction in (0.5, 1)");
  synth_cmd->add_option("--signal", signal_text, "logit signal strength");
  synth_cmd->add_option("--seed", seed_text, "global seed");
  synth_cmd->add_option("--out", out_dir, "output CSV path");
  synth_cmd->add_option("--config", config_path, "flat key=value config file");

  auto* replay_cmd = app.add_subcommand("replay", "transcript utilities");
  auto* replay_verify =
      replay_cmd->add_subcommand("verify", "validate a transcript file");
  replay_verify->add_option("--transcript", transcript, "transcript path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ConversionError& e) {
    throw Error(ErrorCode::BadValue, e.what());
  } catch (const CLI::RequiredError& e) {
    throw Error(ErrorCode::MissingFlag, e.what());
  } catch (const CLI::ParseError& e) {
    throw Error(ErrorCode::UnknownCommand, e.what());
  }

  auto parse_u64 = [](const std::string& text, const char* what) {
    if (text.empty()) return std::uint64_t{0};
    try {
      std::size_t used = 0;
      std::uint64_t v = std::stoull(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadValue,
                  std::string(what) + " must be an integer, got '" + text + "'");
    }
  };
  auto parse_real = [](const std::string& text, const char* what) {
    try {
      std::size_t used = 0;
      double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadValue,
                  std::string(what) + " must be a number, got '" + text + "'");
    }
  };

  config.seed_set = !seed_text.empty();
  if (config.seed_set) config.seed = parse_u64(seed_text, "--seed");
  if (!mode_name.empty()) config.mode = parse_mode(mode_name);
  config.recipe = recipe;
  config.csv = csv;
  config.application_csv = application_csv;
  config.credit_csv = credit_csv;
  config.transcript = transcript;
  config.modeling_dir = modeling_dir;
  config.guide = guide;
  config.output_dir = out_dir;
  apply_set_overrides(config, sets);

  if (eda_cmd->parsed()) {
    config.command = "eda";
    config.csv = eda_csv;
    config.target = eda_target;
    config.output_dir = eda_out;
    if (config.csv.empty()) throw Error(ErrorCode::MissingFlag, "--csv");
    if (config.target.empty()) throw Error(ErrorCode::MissingFlag, "--target");
  } else if (model_cmd->parsed() && model_run->parsed()) {
    config.command = "model-run";
    if (config.recipe.empty()) throw Error(ErrorCode::MissingFlag, "--recipe");
    if (config.output_dir.empty()) throw Error(ErrorCode::MissingFlag, "--out");
    if (!config.seed_set) throw Error(ErrorCode::MissingFlag, "--seed");
    if (mode_name.empty()) throw Error(ErrorCode::MissingFlag, "--mode");
  } else if (mrm_cmd->parsed() && mrm_run->parsed()) {
    config.command = "mrm-run";
    if (config.modeling_dir.empty())
      throw Error(ErrorCode::MissingFlag, "--modeling-dir");
    if (config.output_dir.empty()) throw Error(ErrorCode::MissingFlag, "--out");
    if (!config.seed_set) throw Error(ErrorCode::MissingFlag, "--seed");
    if (mode_name.empty()) throw Error(ErrorCode::MissingFlag, "--mode");
  } else if (synth_cmd->parsed()) {
    config.command = "synth";
    config.rows = static_cast<std::size_t>(parse_u64(rows_text, "--rows"));
    config.numeric = static_cast<std::size_t>(parse_u64(numeric_text, "--numeric"));
    config.categorical =
        static_cast<std::size_t>(parse_u64(categorical_text, "--categorical"));
    config.imbalance = parse_real(imbalance_text, "--imbalance");
    config.signal = parse_real(signal_text, "--signal");
    if (config.output_dir.empty()) throw Error(ErrorCode::MissingFlag, "--out");
    if (!config.seed_set) throw Error(ErrorCode::MissingFlag, "--seed");
  } else if (replay_cmd->parsed() && replay_verify->parsed()) {
    config.command = "replay-verify";
    if (config.transcript.empty())
      throw Error(ErrorCode::MissingFlag, "--transcript");
  } else {
    throw Error(ErrorCode::UnknownCommand,
                "expected one of: eda, model run, mrm run, synth, replay verify");
  }

  if ((config.mode == crews::RunMode::Replay ||
       config.mode == crews::RunMode::Record) &&
      (config.command == "model-run" || config.command == "mrm-run") &&
      config.transcript.empty())
    throw Error(ErrorCode::MissingFlag, "--transcript (required for " +
                                            std::string(run_mode_name(config.mode)) +
                                            " mode)");
  return config;
}

int run_command(const RunConfig& config) {
  if (config.command == "eda") {
    tab::Table table = tab::load_csv(config.csv);
    eda::EdaReport report = eda::run_eda(table, config.target);
    std::string rendered = eda::render_eda_summary(report);
    std::cout << rendered;
    if (!config.output_dir.empty()) {
      fs::create_directories(config.output_dir);
      write_text_file(config.output_dir + "/" + crews::kEdaReportJson,
                      eda::eda_report_json(report) + "\n");
      write_text_file(config.output_dir + "/eda_summary.txt", rendered);
    }
    return 0;
  }

  if (config.command == "model-run") {
    std::map<std::string, std::string> data_paths;
    if (!config.csv.empty()) data_paths["csv"] = config.csv;
    if (!config.application_csv.empty())
      data_paths["application_csv"] = config.application_csv;
    if (!config.credit_csv.empty()) data_paths["credit_csv"] = config.credit_csv;
    crews::Recipe recipe =
        crews::recipe_by_name(config.recipe, data_paths, config.output_dir);
    crews::RunOptions options;
    options.mode = config.mode;
    options.seed = config.seed;
    options.transcript_path = config.transcript;
    options.param_overrides = config.overrides;
    crews::RunResult result = crews::run_recipe(recipe, options);
    std::cout << "modeling crew completed " << result.crew_output.task_outputs.size()
              << " tasks; documentation at " << config.output_dir << "/"
              << crews::kDocumentationTxt << "\n";
    return result.exit_code;
  }

  if (config.command == "mrm-run") {
    crews::RunOptions options;
    options.mode = config.mode;
    options.seed = config.seed;
    options.transcript_path = config.transcript;
    options.param_overrides = config.overrides;
    crews::MrmRunResult result = crews::run_mrm(
        config.modeling_dir, config.guide, config.output_dir, options);
    std::cout << "MRM verdict: " << (result.overall_pass ? "pass" : "gaps-found")
              << "; report at " << config.output_dir << "/"
              << crews::kMrmReportTxt << "\n";
    return result.exit_code;
  }

  if (config.command == "synth") {
    tab::Table table = generate_synthetic_dataset(
        config.rows, config.numeric, config.categorical, config.imbalance,
        config.signal, config.seed);
    tab::write_csv(table, config.output_dir);
    std::cout << "wrote " << table.n_rows() << " x " << table.n_cols()
              << " synthetic table to " << config.output_dir << "\n";
    return 0;
  }

  if (config.command == "replay-verify") {
    llm::Transcript transcript = llm::Transcript::load(config.transcript);
    std::cout << "transcript OK: " << transcript.size()
              << " recorded responses, fingerprints unique\n";
    return 0;
  }

  throw Error(ErrorCode::UnknownCommand, config.command);
}

int cli_main(const std::vector<std::string>& args) {
  try {
    return run_command(parse_cli(args));
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace crewml::cli
