#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "crewml/crews/runner.hpp"

namespace crewml::cli {

struct RunConfig {
  std::string command;  // eda | model-run | mrm-run | synth | replay-verify
  std::string recipe;
  std::uint64_t seed = 0;
  bool seed_set = false;
  crews::RunMode mode = crews::RunMode::Replay;
  std::string csv;
  std::string application_csv;
  std::string credit_csv;
  std::string target;
  std::string guide;
  std::string output_dir;
  std::string transcript;
  std::string modeling_dir;
  // synth
  std::size_t rows = 5000;
  std::size_t numeric = 6;
  std::size_t categorical = 2;
  double imbalance = 0.78;
  double signal = 3.0;
  nlohmann::json overrides = nlohmann::json::object();
};

/// argv without the program name. Flags override config-file values
/// (--config file of key=value lines). Throws UnknownCommand / MissingFlag /
/// BadValue.
RunConfig parse_cli(const std::vector<std::string>& args);

/// 0 = success, 1 = MRM validation gaps found, 2 = execution error.
int run_command(const RunConfig& config);

/// Convenience: parse + run, mapping parse errors to exit code 2.
int cli_main(const std::vector<std::string>& args);

std::map<std::string, std::string> parse_config_file(const std::string& path);

}  // namespace crewml::cli
