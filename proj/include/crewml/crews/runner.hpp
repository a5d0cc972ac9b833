#pragma once

#include <cstdint>
#include <string>

#include "crewml/core/crew.hpp"
#include "crewml/crews/modeling.hpp"
#include "crewml/crews/recipe.hpp"
#include "crewml/tab/table.hpp"

namespace crewml::crews {

enum class RunMode { Live, Replay, Record, Scripted };

const char* run_mode_name(RunMode mode);

struct RunOptions {
  RunMode mode = RunMode::Scripted;
  std::uint64_t seed = 42;
  std::string transcript_path;      // required for replay / record
  bool record_scripted = false;     // record from the scripted planner
  nlohmann::json param_overrides;   // merged into the tool-context params
};

struct RunResult {
  core::CrewOutput crew_output;
  std::string documentation;
  std::uint64_t live_calls = 0;  // stays 0 in hermetic modes
  int exit_code = 0;
};

/// Full modeling pipeline: input checks, (card) merge, split, crew run,
/// artifacts. The split happens before the crew so no feature engineering
/// sees test data.
RunResult run_recipe(const Recipe& recipe, const RunOptions& options);

/// Application + credit records -> one row per ID with the binary target and
/// the derived ACCOUNT_AGE = |min(MONTHS_BALANCE)|.
tab::Table build_card_table(const tab::Table& applications,
                            const tab::Table& credit_records);

struct MrmRunResult {
  core::CrewOutput crew_output;
  bool overall_pass = false;
  std::uint64_t live_calls = 0;
  int exit_code = 0;  // 1 = validation gaps found
};

/// MRM battery over a finished modeling run's output directory. The guide
/// path may be empty, in which case the bundled guide is used.
MrmRunResult run_mrm(const std::string& modeling_dir,
                     const std::string& guide_path,
                     const std::string& output_dir, const RunOptions& options);

}  // namespace crewml::crews
