#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "crewml/memory/memory_stream.hpp"

namespace crewml::core {

struct AgentSpec {
  std::string role;       // persona title, unique within a crew
  std::string goal;
  std::string backstory;
  std::vector<std::string> tool_ids;
  bool allow_delegation = false;
  int max_iterations = 8;  // agent-loop bound (gateway calls)
};

struct TaskSpec {
  std::string id;
  std::string description;      // template with {placeholder} slots
  std::string expected_output;
  std::string assigned_agent;   // empty = manager decides (hierarchical)
  std::vector<std::string> context_task_ids;
};

enum class ProcessMode { Hierarchical, Sequential };

struct CrewSpec {
  std::vector<AgentSpec> agents;
  std::vector<TaskSpec> tasks;
  ProcessMode process = ProcessMode::Hierarchical;
  std::optional<AgentSpec> manager;  // required iff hierarchical
};

struct Artifact {
  std::string name;
  std::string path;
};

struct TraceEntry {
  std::string tool_id;
  std::string input_digest;
  std::string output_digest;
};

struct TaskOutput {
  std::string task_id;
  std::string agent_role;
  std::string raw_text;
  std::vector<Artifact> artifacts;
  std::vector<TraceEntry> tool_trace;
};

struct CrewOutput {
  std::vector<TaskOutput> task_outputs;
  std::vector<Artifact> artifact_index;  // deduplicated by path, last writer
  std::int64_t started_at = 0;
  std::int64_t finished_at = 0;
};

// ---------------------------------------------------------------------------
// tools
// ---------------------------------------------------------------------------

struct ToolContext {
  std::uint64_t seed = 0;
  std::string output_dir;
  std::string logical_prefix;  // recipe alias used inside prompts
  std::map<std::string, std::string> path_map;  // logical -> real inputs
  const memory::MemoryStore* memory = nullptr;
  nlohmann::json params;  // recipe-specific settings

  /// Logical prompt paths ("credit/train2.csv") resolve into the run's
  /// output directory; registered inputs map to their real locations.
  std::string resolve(const std::string& logical) const;
};

struct ToolResult {
  std::string observation;
  std::vector<Artifact> artifacts;
};

struct Tool {
  std::string id;
  std::string display_name;
  std::string description;
  std::vector<std::pair<std::string, std::string>> fields;
  std::function<ToolResult(const ToolContext&, const nlohmann::json&)> invoke;
};

class ToolCatalog {
 public:
  void add(Tool tool);
  bool contains(const std::string& id) const;
  /// Accepts the tool id or its display name (case-insensitive).
  const Tool& resolve(const std::string& name) const;
  const Tool& get(const std::string& id) const;
  std::vector<std::string> ids() const;

 private:
  std::vector<Tool> tools_;
};

/// Built-in id of the delegation pseudo-tool handled by the crew runtime.
inline constexpr const char* kDelegateToolId = "delegate";
inline constexpr const char* kDelegateDisplayName = "Delegate work to coworker";

}  // namespace crewml::core
