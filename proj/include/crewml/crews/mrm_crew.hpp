#pragma once

#include <string>

#include "crewml/crews/modeling.hpp"

namespace crewml::crews {

/// Six agents (MRM manager, compliance checker, replication engineer, two
/// validation analysts, documentation writer), five tasks, hierarchical.
CrewBundle build_mrm_crew(const std::string& alias, const std::string& target);

/// Bundled organizational modeling guide (six pipeline stages plus the
/// minimum benchmarks the soundness check reads).
const std::string& default_modeling_guide();
void write_default_guide(const std::string& path);

}  // namespace crewml::crews
