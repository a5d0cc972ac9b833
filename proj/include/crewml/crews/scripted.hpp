#pragma once

#include <map>
#include <string>

#include "crewml/llm/gateway.hpp"

namespace crewml::crews {

/// What the stand-in model does for one task: which coworker the manager
/// delegates to, and which tool (with which input) the worker invokes.
struct ScriptedStep {
  std::string coworker;
  std::string tool_id;
  nlohmann::json tool_input;
};

/// Deterministic stand-in for the live model. It reproduces the logged
/// behavior procedurally: the manager delegates each task to its coworker,
/// the worker invokes its tool, and after a tool observation the agent
/// answers with that observation. Used directly in tests and to mint the
/// replay transcripts.
class ScriptedCrewBackend : public llm::ChatBackend {
 public:
  ScriptedCrewBackend(std::string manager_role,
                      std::map<std::string, ScriptedStep> plans)
      : manager_role_(std::move(manager_role)), plans_(std::move(plans)) {}

  llm::ChatResponse complete(const llm::ChatRequest& request) override;
  std::string name() const override { return "scripted"; }

 private:
  std::string manager_role_;
  std::map<std::string, ScriptedStep> plans_;
};

}  // namespace crewml::crews
