#include "crewml/crews/scripted.hpp"

#include "crewml/core/types.hpp"
#include "crewml/util/error.hpp"
#include "crewml/util/text.hpp"

namespace crewml::crews {

namespace {

// "You are <role>. Goal: ..." somewhere in the system message
std::string parse_role(const std::string& system_content) {
  auto start = system_content.find("You are ");
  if (start == std::string::npos) return "";
  start += 8;
  auto end = system_content.find(". Goal:", start);
  if (end == std::string::npos) return "";
  return system_content.substr(start, end - start);
}

std::string section(const std::string& text, const std::string& marker,
                    const std::vector<std::string>& terminators) {
  auto start = text.find(marker);
  if (start == std::string::npos) return "";
  start += marker.size();
  std::size_t end = text.size();
  for (const auto& term : terminators) {
    auto pos = text.find(term, start);
    if (pos != std::string::npos && pos < end) end = pos;
  }
  return trim(text.substr(start, end - start));
}

}  // namespace

llm::ChatResponse ScriptedCrewBackend::complete(const llm::ChatRequest& request) {
  if (request.messages.empty())
    throw Error(ErrorCode::MalformedResponse, "empty request");

  // after a tool observation the agent reports that observation verbatim
  const llm::Message& last = request.messages.back();
  if (last.role == llm::Role::Tool) {
    std::string content = last.content;
    auto nl = content.find('\n');
    if (nl != std::string::npos && content.rfind("Observation from ", 0) == 0)
      content = content.substr(nl + 1);
    return llm::ChatResponse::final(content);
  }

  std::string role;
  std::string user_text;
  for (const auto& m : request.messages) {
    if (m.role == llm::Role::System && role.empty()) role = parse_role(m.content);
    if (m.role == llm::Role::User && user_text.empty()) user_text = m.content;
  }
  std::string task_id =
      section(user_text, "Task-Id: ", {"\n"});
  if (task_id.empty())
    throw Error(ErrorCode::MalformedResponse,
                "scripted backend found no Task-Id header");
  auto plan = plans_.find(task_id);
  if (plan == plans_.end())
    throw Error(ErrorCode::MalformedResponse,
                "scripted backend has no plan for task '" + task_id + "'");

  if (role == manager_role_) {
    std::string task_text =
        section(user_text, "Current task: ", {"\n\nContext:"});
    std::string context =
        section(user_text, "\n\nContext:\n", {"\n\nExpected output:"});
    if (context == "(none)") context.clear();
    return llm::ChatResponse::tool_call(
        core::kDelegateToolId, {{"task", task_text},
                                {"context", context},
                                {"coworker", plan->second.coworker}});
  }
  return llm::ChatResponse::tool_call(plan->second.tool_id,
                                      plan->second.tool_input);
}

}  // namespace crewml::crews
