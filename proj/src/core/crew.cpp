#include "crewml/core/crew.hpp"

#include <chrono>
#include <regex>
#include <set>
#include <sstream>

#include "crewml/util/text.hpp"

namespace crewml::core {

std::string ToolContext::resolve(const std::string& logical) const {
  auto it = path_map.find(logical);
  if (it != path_map.end()) return it->second;
  if (!logical.empty() && logical.front() == '/') return logical;
  std::string tail = logical;
  if (!logical_prefix.empty() &&
      logical.rfind(logical_prefix + "/", 0) == 0)
    tail = logical.substr(logical_prefix.size() + 1);
  return output_dir.empty() ? tail : output_dir + "/" + tail;
}

void ToolCatalog::add(Tool tool) {
  for (const auto& t : tools_)
    if (t.id == tool.id)
      throw Error(ErrorCode::BadValue, "duplicate tool id '" + tool.id + "'");
  tools_.push_back(std::move(tool));
}

bool ToolCatalog::contains(const std::string& id) const {
  for (const auto& t : tools_)
    if (t.id == id) return true;
  return false;
}

const Tool& ToolCatalog::resolve(const std::string& name) const {
  for (const auto& t : tools_)
    if (t.id == name) return t;
  for (const auto& t : tools_)
    if (to_lower(t.display_name) == to_lower(trim(name))) return t;
  throw Error(ErrorCode::UnknownTool, "no tool named '" + name + "'");
}

const Tool& ToolCatalog::get(const std::string& id) const {
  for (const auto& t : tools_)
    if (t.id == id) return t;
  throw Error(ErrorCode::UnknownTool, "no tool with id '" + id + "'");
}

std::vector<std::string> ToolCatalog::ids() const {
  std::vector<std::string> out;
  for (const auto& t : tools_) out.push_back(t.id);
  return out;
}

std::int64_t SystemClock::now() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

void RunLog::event(const std::string& kind, nlohmann::json fields) {
  fields["seq"] = seq_++;
  fields["t"] = clock_.now();
  fields["event"] = kind;
  text_ += fields.dump();
  text_ += "\n";
}

void RunLog::save(const std::string& path) const { write_text_file(path, text_); }

std::string digest_text(const std::string& text) {
  return hex64(fnv1a64(text));
}

std::string digest_json(const nlohmann::json& j) { return digest_text(j.dump()); }

std::string resolve_placeholders(
    const std::string& text, const std::map<std::string, std::string>& inputs) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c != '{') {
      out.push_back(c);
      ++i;
      continue;
    }
    std::size_t close = text.find('}', i + 1);
    bool is_placeholder = false;
    if (close != std::string::npos && close > i + 1) {
      is_placeholder = true;
      for (std::size_t k = i + 1; k < close; ++k) {
        char p = text[k];
        if (!(std::isalnum(static_cast<unsigned char>(p)) || p == '_'))
          is_placeholder = false;
      }
    }
    if (!is_placeholder) {
      out.push_back(c);
      ++i;
      continue;
    }
    std::string name = text.substr(i + 1, close - i - 1);
    auto it = inputs.find(name);
    if (it == inputs.end())
      throw Error(ErrorCode::PlaceholderMissing,
                  "no input supplies placeholder '" + name + "'");
    out += it->second;
    i = close + 1;
  }
  return out;
}

Crew Crew::build(CrewSpec spec, const ToolCatalog& catalog) {
  if (spec.tasks.empty())
    throw Error(ErrorCode::EmptyCrew, "crew has no tasks");
  if (spec.agents.empty())
    throw Error(ErrorCode::EmptyCrew, "crew has no agents");

  std::set<std::string> roles;
  auto check_agent = [&](const AgentSpec& agent) {
    if (agent.role.empty())
      throw Error(ErrorCode::BadValue, "agent role must be nonempty");
    if (agent.max_iterations < 1)
      throw Error(ErrorCode::BadValue, "max_iterations must be >= 1");
    if (!roles.insert(agent.role).second)
      throw Error(ErrorCode::DuplicateRole, "duplicate role '" + agent.role + "'");
    for (const auto& id : agent.tool_ids)
      if (id != kDelegateToolId && !catalog.contains(id))
        throw Error(ErrorCode::UnknownTool,
                    "agent '" + agent.role + "' references tool '" + id + "'");
  };
  for (const auto& agent : spec.agents) check_agent(agent);

  if (spec.process == ProcessMode::Hierarchical) {
    if (!spec.manager)
      throw Error(ErrorCode::MissingManager,
                  "hierarchical crews need a manager agent");
    check_agent(*spec.manager);
  }

  std::set<std::string> seen_tasks;
  for (const auto& task : spec.tasks) {
    if (task.id.empty())
      throw Error(ErrorCode::BadValue, "task id must be nonempty");
    if (seen_tasks.count(task.id))
      throw Error(ErrorCode::TaskCycle, "duplicate task id '" + task.id + "'");
    for (const auto& dep : task.context_task_ids)
      if (!seen_tasks.count(dep))
        throw Error(ErrorCode::TaskCycle,
                    "task '" + task.id + "' depends on '" + dep +
                        "' which is not an earlier task");
    seen_tasks.insert(task.id);
    if (!task.assigned_agent.empty() && !roles.count(task.assigned_agent))
      throw Error(ErrorCode::UnknownAgent,
                  "task '" + task.id + "' assigned to unknown agent '" +
                      task.assigned_agent + "'");
  }

  Crew crew;
  crew.spec_ = std::move(spec);
  return crew;
}

const AgentSpec* Crew::find_agent(const std::string& role) const {
  for (const auto& agent : spec_.agents)
    if (agent.role == role) return &agent;
  return nullptr;
}

namespace {

std::string persona_prompt(const AgentSpec& agent, const Crew& crew,
                           const ToolCatalog& catalog, bool can_delegate) {
  std::ostringstream out;
  out << "You are " << agent.role << ". Goal: " << agent.goal
      << " Backstory: " << agent.backstory << "\n\nAvailable tools:\n";
  for (const auto& id : agent.tool_ids) {
    if (id == kDelegateToolId) continue;
    const Tool& tool = catalog.get(id);
    out << "- " << tool.display_name << " (" << tool.id
        << "): " << tool.description << "\n";
  }
  if (can_delegate) {
    out << "- " << kDelegateDisplayName << " (" << kDelegateToolId
        << "): hand a task to one coworker and receive their result. Input "
           "fields: task, context, coworker. Coworkers: ";
    bool first = true;
    for (const auto& a : crew.spec().agents) {
      if (a.role == agent.role) continue;
      out << (first ? "" : ", ") << "\"" << a.role << "\"";
      first = false;
    }
    out << "\n";
  }
  out << "\nRespond with either a final answer, or a tool invocation in this "
         "form:\nAction: <tool name>\nAction Input: <JSON object with the "
         "input fields>";
  return out.str();
}

std::string task_prompt(const TaskSpec& task, const std::string& context) {
  std::ostringstream out;
  out << "Task-Id: " << task.id << "\nCurrent task: " << task.description
      << "\n\nContext:\n" << (context.empty() ? "(none)" : context);
  if (!task.expected_output.empty())
    out << "\n\nExpected output: " << task.expected_output;
  return out.str();
}

}  // namespace

TaskOutput execute_task(const AgentSpec& agent, const TaskSpec& task,
                        const std::string& context, const Crew& crew,
                        CrewDeps& deps, int delegation_depth) {
  bool can_delegate = agent.allow_delegation && delegation_depth == 0;

  TaskOutput output;
  output.task_id = task.id;
  output.agent_role = agent.role;

  if (!context.empty())
    deps.memory->store(memory::RecordKind::Context, agent.role, task.id,
                       context, deps.clock->now());

  llm::ChatRequest request;
  request.messages.push_back(
      {llm::Role::System,
       persona_prompt(agent, crew, *deps.catalog, can_delegate)});
  request.messages.push_back({llm::Role::User, task_prompt(task, context)});
  for (const auto& id : agent.tool_ids) {
    if (id == kDelegateToolId) continue;
    const Tool& tool = deps.catalog->get(id);
    llm::ToolSchema schema;
    schema.tool_id = tool.id;
    schema.display_name = tool.display_name;
    schema.description = tool.description;
    schema.fields = tool.fields;
    request.tool_schemas.push_back(std::move(schema));
  }

  if (deps.run_log)
    deps.run_log->event("task_started",
                        {{"task_id", task.id}, {"agent", agent.role}});

  for (int iter = 0; iter < agent.max_iterations; ++iter) {
    llm::ChatRequest guarded = llm::clamp_guardrails(request, deps.guardrails);
    llm::ChatResponse response = deps.backend->complete(guarded);

    if (response.kind == llm::ChatResponse::Kind::Final) {
      output.raw_text = response.text;
      deps.memory->store(memory::RecordKind::TaskOutput, agent.role, task.id,
                         response.text, deps.clock->now());
      if (deps.run_log)
        deps.run_log->event("task_completed", {{"task_id", task.id},
                                               {"agent", agent.role},
                                               {"chars", response.text.size()}});
      return output;
    }

    // tool call path
    deps.memory->store(
        memory::RecordKind::ActionInput, agent.role, task.id,
        response.tool_id + " " + response.tool_input.dump(), deps.clock->now());

    std::string observation;
    std::string tool_id;
    if (response.tool_id == kDelegateToolId ||
        to_lower(trim(response.tool_id)) == to_lower(kDelegateDisplayName)) {
      tool_id = kDelegateToolId;
      if (!can_delegate)
        throw Error(ErrorCode::UnknownTool,
                    "agent '" + agent.role + "' may not delegate");
      std::string coworker = response.tool_input.value("coworker", "");
      const AgentSpec* worker = crew.find_agent(coworker);
      if (!worker)
        throw Error(ErrorCode::UnknownCoworker,
                    "no coworker named '" + coworker + "'");
      TaskSpec sub;
      sub.id = task.id;
      sub.description = response.tool_input.value("task", "");
      sub.expected_output = task.expected_output;
      if (deps.run_log)
        deps.run_log->event("delegation", {{"task_id", task.id},
                                           {"manager", agent.role},
                                           {"coworker", worker->role}});
      TaskOutput sub_output =
          execute_task(*worker, sub, response.tool_input.value("context", ""),
                       crew, deps, delegation_depth + 1);
      observation = sub_output.raw_text;
      for (auto& a : sub_output.artifacts) output.artifacts.push_back(a);
    } else {
      const Tool* tool = nullptr;
      try {
        tool = &deps.catalog->resolve(response.tool_id);
      } catch (const Error&) {
        tool = nullptr;
      }
      if (tool == nullptr) {
        observation = "ERROR(UnknownTool): no tool named '" +
                      response.tool_id + "'";
        tool_id = response.tool_id;
      } else {
        tool_id = tool->id;
        deps.memory->store(memory::RecordKind::ToolInput, agent.role, task.id,
                           tool->id + " " + response.tool_input.dump(),
                           deps.clock->now());
        if (deps.run_log)
          deps.run_log->event("tool_call",
                              {{"task_id", task.id},
                               {"agent", agent.role},
                               {"tool", tool->id},
                               {"input_digest", digest_json(response.tool_input)}});
        try {
          ToolResult result = tool->invoke(deps.tool_context, response.tool_input);
          observation = result.observation;
          for (auto& a : result.artifacts) output.artifacts.push_back(a);
        } catch (const Error& e) {
          // embedded as an observation; the loop continues
          observation = std::string("ERROR(") + error_code_name(e.code()) +
                        "): " + e.what();
        }
      }
    }

    output.tool_trace.push_back(TraceEntry{
        tool_id, digest_json(response.tool_input), digest_text(observation)});
    request.messages.push_back(
        {llm::Role::Assistant, "Action: " + response.tool_id + "\nAction Input: " +
                                   response.tool_input.dump()});
    request.messages.push_back(
        {llm::Role::Tool,
         "Observation from " + tool_id + ":\n" + observation});
  }

  throw Error(ErrorCode::AgentLoopExceeded,
              "agent '" + agent.role + "' hit max_iterations=" +
                  std::to_string(agent.max_iterations) + " on task '" +
                  task.id + "'");
}

CrewOutput aggregate(const std::vector<TaskOutput>& outputs) {
  if (outputs.empty())
    throw Error(ErrorCode::EmptyOutputs, "no task outputs to aggregate");
  CrewOutput out;
  out.task_outputs = outputs;
  std::map<std::string, std::size_t> by_path;  // path -> index, last writer
  for (const auto& task : outputs) {
    for (const auto& artifact : task.artifacts) {
      auto it = by_path.find(artifact.path);
      if (it == by_path.end()) {
        by_path[artifact.path] = out.artifact_index.size();
        out.artifact_index.push_back(artifact);
      } else {
        out.artifact_index[it->second] = artifact;
      }
    }
  }
  return out;
}

CrewOutput Crew::run(const std::map<std::string, std::string>& inputs,
                     CrewDeps& deps) const {
  // resolve every template up front so a missing input fails before any work
  std::vector<TaskSpec> tasks = spec_.tasks;
  for (auto& task : tasks)
    task.description = resolve_placeholders(task.description, inputs);

  std::int64_t started = deps.clock->now();
  std::vector<TaskOutput> outputs;
  for (const auto& task : tasks) {
    std::string context =
        deps.memory->build_context(task.context_task_ids, deps.context_budget);
    try {
      if (spec_.process == ProcessMode::Hierarchical) {
        outputs.push_back(
            execute_task(*spec_.manager, task, context, *this, deps, 0));
      } else {
        const AgentSpec* agent = find_agent(task.assigned_agent);
        if (!agent)
          throw Error(ErrorCode::UnknownAgent,
                      "task '" + task.id + "' has no assigned agent");
        outputs.push_back(execute_task(*agent, task, context, *this, deps, 0));
      }
    } catch (const Error& e) {
      CrewOutput partial;
      if (!outputs.empty()) partial = aggregate(outputs);
      partial.started_at = started;
      partial.finished_at = deps.clock->now();
      throw CrewAborted(e.code(),
                        std::string(e.what()) + " (crew aborted after " +
                            std::to_string(outputs.size()) + " of " +
                            std::to_string(tasks.size()) + " tasks)",
                        std::move(partial));
    }
  }
  CrewOutput out = aggregate(outputs);
  out.started_at = started;
  out.finished_at = deps.clock->now();
  return out;
}

}  // namespace crewml::core
