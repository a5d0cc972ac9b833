#pragma once

#include <memory>

#include "crewml/core/types.hpp"
#include "crewml/llm/gateway.hpp"
#include "crewml/util/error.hpp"

namespace crewml::core {

/// Monotone event clock. Replay runs use the logical clock so structured
/// outputs are byte-identical across runs.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual std::int64_t now() = 0;
};

class SystemClock : public Clock {
 public:
  std::int64_t now() override;
};

class LogicalClock : public Clock {
 public:
  std::int64_t now() override { return next_++; }

 private:
  std::int64_t next_ = 0;
};

/// Structured run log: one JSON record per delegation / tool event.
class RunLog {
 public:
  RunLog(Clock& clock) : clock_(clock) {}
  void event(const std::string& kind, nlohmann::json fields);
  const std::string& text() const { return text_; }
  void save(const std::string& path) const;

 private:
  Clock& clock_;
  std::int64_t seq_ = 0;
  std::string text_;
};

struct CrewDeps {
  llm::ChatBackend* backend = nullptr;
  memory::MemoryStore* memory = nullptr;
  const ToolCatalog* catalog = nullptr;
  ToolContext tool_context;
  RunLog* run_log = nullptr;
  Clock* clock = nullptr;
  llm::GuardrailPolicy guardrails;
  std::size_t context_budget = 8000;
};

/// Thrown when a task fails mid-run; carries the partial output with the
/// completed tasks, per the fail-fast policy (no automatic retry).
class CrewAborted : public Error {
 public:
  CrewAborted(ErrorCode code, const std::string& message, CrewOutput partial)
      : Error(code, message), partial_(std::move(partial)) {}
  const CrewOutput& partial() const { return partial_; }

 private:
  CrewOutput partial_;
};

class Crew {
 public:
  const CrewSpec& spec() const { return spec_; }

  /// Validated spec + resolved tools. Throws UnknownTool, DuplicateRole,
  /// MissingManager, TaskCycle, EmptyCrew, UnknownAgent.
  static Crew build(CrewSpec spec, const ToolCatalog& catalog);

  /// Runs every task (hierarchical: manager delegates; sequential: listed
  /// order). Placeholders in task descriptions resolve from `inputs` up
  /// front (PlaceholderMissing). Task failures raise CrewAborted.
  CrewOutput run(const std::map<std::string, std::string>& inputs,
                 CrewDeps& deps) const;

  const AgentSpec* find_agent(const std::string& role) const;

 private:
  CrewSpec spec_;
};

/// One agent loop: persona prompt -> gateway -> tool dispatch or final
/// answer, bounded by agent.max_iterations. Tool errors become observations;
/// the loop ends on a final answer or AgentLoopExceeded.
TaskOutput execute_task(const AgentSpec& agent, const TaskSpec& task,
                        const std::string& context, const Crew& crew,
                        CrewDeps& deps, int delegation_depth = 0);

/// Order-preserving aggregation; artifact index deduplicated by path
/// (last writer recorded). Throws EmptyOutputs.
CrewOutput aggregate(const std::vector<TaskOutput>& outputs);

/// {placeholder} substitution; unresolved placeholders raise
/// PlaceholderMissing naming the slot.
std::string resolve_placeholders(const std::string& text,
                                 const std::map<std::string, std::string>& inputs);

std::string digest_text(const std::string& text);
std::string digest_json(const nlohmann::json& j);

}  // namespace crewml::core
