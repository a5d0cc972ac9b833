#include "crewml/llm/gateway.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <regex>
#include <sstream>

#define CPPHTTPLIB_NO_EXCEPTIONS
#include <httplib.h>

#include "crewml/util/error.hpp"
#include "crewml/util/text.hpp"

namespace crewml::llm {

const char* role_name(Role role) {
  switch (role) {
    case Role::System: return "system";
    case Role::User: return "user";
    case Role::Assistant: return "assistant";
    case Role::Tool: return "tool";
  }
  return "user";
}

ChatResponse ChatResponse::final(std::string text) {
  ChatResponse r;
  r.kind = Kind::Final;
  r.text = std::move(text);
  return r;
}

ChatResponse ChatResponse::tool_call(std::string tool_id, nlohmann::json input) {
  ChatResponse r;
  r.kind = Kind::ToolCall;
  r.tool_id = std::move(tool_id);
  r.tool_input = std::move(input);
  return r;
}

nlohmann::json ChatResponse::to_json() const {
  if (kind == Kind::Final) return {{"kind", "final"}, {"text", text}};
  return {{"kind", "tool_call"}, {"tool_id", tool_id}, {"tool_input", tool_input}};
}

ChatResponse ChatResponse::from_json(const nlohmann::json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "final") return final(j.at("text").get<std::string>());
  if (kind == "tool_call")
    return tool_call(j.at("tool_id").get<std::string>(), j.at("tool_input"));
  throw Error(ErrorCode::MalformedResponse, "unknown response kind '" + kind + "'");
}

std::string normalize_for_fingerprint(const std::string& content) {
  // scrub ISO-8601 timestamps so logged wall-clock values cannot break replay
  static const std::regex iso_ts(
      R"(\d{4}-\d{2}-\d{2}[T ]\d{2}:\d{2}:\d{2}(\.\d+)?(Z|[+-]\d{2}:?\d{2})?)");
  std::string scrubbed = std::regex_replace(content, iso_ts, "<ts>");
  return collapse_whitespace(scrubbed);
}

std::string fingerprint(const ChatRequest& request) {
  std::string material;
  for (const Message& m : request.messages) {
    material += role_name(m.role);
    material += '\x1f';
    material += normalize_for_fingerprint(m.content);
    material += '\x1e';
  }
  if (request.temperature) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "temp=%.3f", *request.temperature);
    material += buf;
  } else {
    material += "temp=unset";
  }
  return hex64(fnv1a64(material));
}

ChatRequest clamp_guardrails(const ChatRequest& request,
                             const GuardrailPolicy& policy) {
  ChatRequest out = request;
  if (!out.temperature) {
    out.temperature = policy.default_temperature;
  } else {
    double t = *out.temperature;
    if (t < policy.min_temperature) t = policy.min_temperature;
    if (t > policy.max_temperature) t = policy.max_temperature;
    out.temperature = t;
  }
  if (!policy.system_prefix.empty()) {
    bool prefixed = false;
    for (Message& m : out.messages) {
      if (m.role != Role::System) continue;
      if (m.content.rfind(policy.system_prefix, 0) != 0)
        m.content = policy.system_prefix + "\n\n" + m.content;
      prefixed = true;
      break;
    }
    if (!prefixed)
      out.messages.insert(out.messages.begin(),
                          Message{Role::System, policy.system_prefix});
  }
  return out;
}

namespace {

// first balanced JSON object starting at or after `from`
std::optional<nlohmann::json> extract_json_object(const std::string& text,
                                                  std::size_t from) {
  std::size_t start = text.find('{', from);
  if (start == std::string::npos) return std::nullopt;
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = start; i < text.size(); ++i) {
    char c = text[i];
    if (in_string) {
      if (c == '\\') ++i;
      else if (c == '"') in_string = false;
      continue;
    }
    if (c == '"') in_string = true;
    else if (c == '{') ++depth;
    else if (c == '}') {
      --depth;
      if (depth == 0) {
        auto parsed = nlohmann::json::parse(text.substr(start, i - start + 1),
                                            nullptr, false);
        if (parsed.is_discarded()) return std::nullopt;
        return parsed;
      }
    }
  }
  return std::nullopt;
}

std::string strip_markup(const std::string& line) {
  std::string out;
  for (char c : line)
    if (c != '`' && c != '*' && c != '_' && c != '#') out.push_back(c);
  return trim(out);
}

}  // namespace

ChatResponse parse_action(const std::string& text) {
  if (trim(text).empty())
    throw Error(ErrorCode::MalformedResponse, "empty model output");
  auto lines = split_lines(text);
  std::ptrdiff_t action_line = -1;
  std::string action_name;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string stripped = strip_markup(lines[i]);
    if (starts_with_ci(stripped, "Action:")) {
      action_line = static_cast<std::ptrdiff_t>(i);
      action_name = trim(stripped.substr(7));
      break;
    }
  }
  if (action_line < 0) return ChatResponse::final(text);

  // tool name may sit on the next non-empty line
  std::size_t scan = static_cast<std::size_t>(action_line) + 1;
  while (action_name.empty() && scan < lines.size()) {
    std::string stripped = strip_markup(lines[scan]);
    if (!stripped.empty() && !starts_with_ci(stripped, "Action Input:")) {
      action_name = stripped;
      ++scan;
      break;
    }
    if (starts_with_ci(stripped, "Action Input:")) break;
    ++scan;
  }
  if (action_name.empty())
    throw Error(ErrorCode::MalformedResponse, "Action header names no tool");

  // locate the input block after the action header
  std::size_t offset = 0;
  for (std::size_t i = 0; i <= static_cast<std::size_t>(action_line); ++i)
    offset += lines[i].size() + 1;
  std::size_t input_pos = std::string::npos;
  std::size_t cursor = offset;
  for (std::size_t i = static_cast<std::size_t>(action_line) + 1;
       i < lines.size(); ++i) {
    if (starts_with_ci(strip_markup(lines[i]), "Action Input:")) {
      input_pos = cursor;
      break;
    }
    cursor += lines[i].size() + 1;
  }
  auto input = extract_json_object(
      text, input_pos == std::string::npos ? offset : input_pos);
  if (!input || !input->is_object())
    throw Error(ErrorCode::MalformedResponse,
                "Action '" + action_name + "' has no parsable input");
  return ChatResponse::tool_call(action_name, *input);
}

// ---------------------------------------------------------------------------
// transcript + backends
// ---------------------------------------------------------------------------

Transcript Transcript::load(const std::string& path) {
  if (!std::filesystem::exists(path)) throw Error(ErrorCode::FileMissing, path);
  Transcript t;
  std::istringstream in(read_text_file(path));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("fp") || !j.contains("response"))
      throw Error(ErrorCode::MalformedResponse,
                  path + " line " + std::to_string(line_no) +
                      " is not a transcript record");
    t.add(j.at("fp").get<std::string>(), ChatResponse::from_json(j.at("response")));
  }
  return t;
}

void Transcript::save(const std::string& path) const {
  std::string out;
  for (const auto& fp : order_) {
    nlohmann::json j{{"fp", fp}, {"response", entries_.at(fp).to_json()}};
    out += j.dump();
    out += "\n";
  }
  write_text_file(path, out);
}

void Transcript::add(const std::string& fp, const ChatResponse& response) {
  auto it = entries_.find(fp);
  if (it != entries_.end()) {
    if (it->second.to_json() != response.to_json())
      throw Error(ErrorCode::DuplicateFingerprint,
                  "fingerprint " + fp + " maps to two different responses");
    return;
  }
  entries_.emplace(fp, response);
  order_.push_back(fp);
}

std::optional<ChatResponse> Transcript::find(const std::string& fp) const {
  auto it = entries_.find(fp);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

ChatResponse ReplayBackend::complete(const ChatRequest& request) {
  std::string fp = fingerprint(request);
  auto hit = transcript_.find(fp);
  if (!hit)
    throw Error(ErrorCode::ReplayMiss,
                "no recorded response for fingerprint " + fp);
  return *hit;
}

ChatResponse RecordingBackend::complete(const ChatRequest& request) {
  ChatResponse response = inner_.complete(request);
  transcript_.add(fingerprint(request), response);
  return response;
}

LiveBackend::LiveBackend(std::string base_url, std::string api_key,
                         std::string model)
    : base_url_(std::move(base_url)),
      api_key_(std::move(api_key)),
      model_(std::move(model)) {}

LiveBackend LiveBackend::from_env() {
  const char* url = std::getenv("CREWML_GATEWAY_URL");
  const char* key = std::getenv("CREWML_GATEWAY_KEY");
  const char* model = std::getenv("CREWML_GATEWAY_MODEL");
  if (!url || !*url)
    throw Error(ErrorCode::GatewayTransport,
                "CREWML_GATEWAY_URL is not set; live mode needs an endpoint");
  return LiveBackend(url, key ? key : "", model ? model : "gpt-3.5-turbo");
}

ChatResponse LiveBackend::complete(const ChatRequest& request) {
  if (request.messages.empty())
    throw Error(ErrorCode::MalformedResponse, "request has no messages");
  ++calls_;

  nlohmann::json body;
  body["model"] = model_;
  body["temperature"] = request.temperature.value_or(0.3);
  nlohmann::json messages = nlohmann::json::array();
  for (const Message& m : request.messages)
    messages.push_back({{"role", role_name(m.role)}, {"content", m.content}});
  body["messages"] = messages;

  // split base url into host part and path prefix
  std::string url = base_url_;
  std::string path = "/chat/completions";
  auto scheme_end = url.find("://");
  std::size_t path_start =
      url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
  if (path_start != std::string::npos) {
    std::string prefix = url.substr(path_start);
    if (!prefix.empty() && prefix != "/") {
      while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
      path = prefix + path;
    }
    url = url.substr(0, path_start);
  }

  httplib::Client client(url);
  client.set_connection_timeout(10);
  client.set_read_timeout(120);
  httplib::Headers headers;
  if (!api_key_.empty())
    headers.emplace("Authorization", "Bearer " + api_key_);
  auto result = client.Post(path, headers, body.dump(), "application/json");
  if (!result)
    throw Error(ErrorCode::GatewayTransport,
                "request to " + url + path + " failed: " +
                    httplib::to_string(result.error()));
  if (result->status < 200 || result->status >= 300)
    throw Error(ErrorCode::GatewayTransport,
                "gateway returned HTTP " + std::to_string(result->status));

  auto j = nlohmann::json::parse(result->body, nullptr, false);
  if (j.is_discarded())
    throw Error(ErrorCode::MalformedResponse, "gateway returned invalid JSON");
  try {
    std::string content =
        j.at("choices").at(0).at("message").at("content").get<std::string>();
    // strict envelope first, then the lenient text parser
    auto envelope = nlohmann::json::parse(content, nullptr, false);
    if (envelope.is_object() && envelope.contains("action") &&
        envelope.contains("action_input"))
      return ChatResponse::tool_call(envelope.at("action").get<std::string>(),
                                     envelope.at("action_input"));
    if (envelope.is_object() && envelope.contains("final"))
      return ChatResponse::final(envelope.at("final").get<std::string>());
    return parse_action(content);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedResponse,
                std::string("unexpected completion shape: ") + e.what());
  }
}

ChatResponse SequenceBackend::complete(const ChatRequest&) {
  if (next_ >= responses_.size())
    throw Error(ErrorCode::MalformedResponse,
                "sequence backend exhausted after " +
                    std::to_string(responses_.size()) + " responses");
  return responses_[next_++];
}

}  // namespace crewml::llm
