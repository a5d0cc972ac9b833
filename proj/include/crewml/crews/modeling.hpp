#pragma once

#include <map>
#include <string>
#include <vector>

#include "crewml/core/types.hpp"
#include "crewml/crews/recipe.hpp"
#include "crewml/crews/scripted.hpp"

namespace crewml::crews {

/// Crew spec plus the scripted plan and the placeholder inputs that
/// instantiate its task templates for one recipe.
struct CrewBundle {
  core::CrewSpec spec;
  std::map<std::string, ScriptedStep> plans;
  std::map<std::string, std::string> inputs;
  std::vector<std::pair<std::string, std::string>> stage_tasks;  // id, stage
};

/// Eight agents (manager, two senior data scientists, one ML engineer,
/// three senior ML engineers, documentation writer), seven tasks, and the
/// hierarchical process.
CrewBundle build_modeling_crew(const Recipe& recipe);

/// Six-section technical documentation assembled from the first six task
/// outputs; throws IncompleteCrewOutput when any stage output is missing.
std::string render_documentation(const core::CrewOutput& output,
                                 const Recipe& recipe);

}  // namespace crewml::crews
