#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace crewml::llm {

enum class Role { System, User, Assistant, Tool };

const char* role_name(Role role);

struct Message {
  Role role = Role::User;
  std::string content;
};

struct ToolSchema {
  std::string tool_id;
  std::string display_name;
  std::string description;
  std::vector<std::pair<std::string, std::string>> fields;  // name, description
};

struct ChatRequest {
  std::vector<Message> messages;
  std::optional<double> temperature;
  std::vector<ToolSchema> tool_schemas;
};

struct ChatResponse {
  enum class Kind { Final, ToolCall };
  Kind kind = Kind::Final;
  std::string text;                 // final answer
  std::string tool_id;              // tool call
  nlohmann::json tool_input;        // tool call, structured

  static ChatResponse final(std::string text);
  static ChatResponse tool_call(std::string tool_id, nlohmann::json input);
  nlohmann::json to_json() const;
  static ChatResponse from_json(const nlohmann::json& j);
};

/// Stable hash of the normalized request (whitespace collapsed, ISO
/// timestamps scrubbed, temperature rounded to 3 decimals). Identical
/// normalized requests fingerprint identically across processes.
std::string fingerprint(const ChatRequest& request);
std::string normalize_for_fingerprint(const std::string& content);

struct GuardrailPolicy {
  double default_temperature = 0.3;
  double min_temperature = 0.0;
  double max_temperature = 0.7;
  std::string system_prefix =
      "Operate strictly within your assigned role and task. Use only the "
      "tools provided, base conclusions on tool observations, and do not "
      "fabricate data or results.";
};

/// Unset temperature -> policy default; otherwise clamped into
/// [min, max]. The first system message is prefixed with the guardrail
/// text. Idempotent.
ChatRequest clamp_guardrails(const ChatRequest& request,
                             const GuardrailPolicy& policy = {});

/// Lenient text parser: "Action:" / "Action Input:" blocks become a tool
/// call, anything else is a final answer. An action header without a
/// parsable JSON input throws MalformedResponse.
ChatResponse parse_action(const std::string& text);

class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual ChatResponse complete(const ChatRequest& request) = 0;
  virtual std::string name() const = 0;
};

/// Recorded (fingerprint -> response) pairs, one JSON object per line.
class Transcript {
 public:
  Transcript() = default;
  static Transcript load(const std::string& path);
  void save(const std::string& path) const;

  /// Throws DuplicateFingerprint when the same fingerprint maps to a
  /// different response.
  void add(const std::string& fp, const ChatResponse& response);
  std::optional<ChatResponse> find(const std::string& fp) const;
  std::size_t size() const { return order_.size(); }

  template <typename F>
  void for_each(F&& fn) const {
    for (const auto& fp : order_) fn(fp, entries_.at(fp));
  }

 private:
  std::map<std::string, ChatResponse> entries_;
  std::vector<std::string> order_;
};

/// Replays recorded responses; ReplayMiss (with the fingerprint in the
/// message) for anything unrecorded.
class ReplayBackend : public ChatBackend {
 public:
  explicit ReplayBackend(Transcript transcript)
      : transcript_(std::move(transcript)) {}
  ChatResponse complete(const ChatRequest& request) override;
  std::string name() const override { return "replay"; }

 private:
  Transcript transcript_;
};

/// Forwards to an inner backend and records every exchange.
class RecordingBackend : public ChatBackend {
 public:
  RecordingBackend(ChatBackend& inner, Transcript& transcript)
      : inner_(inner), transcript_(transcript) {}
  ChatResponse complete(const ChatRequest& request) override;
  std::string name() const override { return "record"; }

 private:
  ChatBackend& inner_;
  Transcript& transcript_;
};

/// OpenAI-compatible chat-completions endpoint. Configuration comes from
/// CREWML_GATEWAY_URL / CREWML_GATEWAY_KEY / CREWML_GATEWAY_MODEL.
class LiveBackend : public ChatBackend {
 public:
  LiveBackend(std::string base_url, std::string api_key, std::string model);
  static LiveBackend from_env();
  ChatResponse complete(const ChatRequest& request) override;
  std::string name() const override { return "live"; }
  std::uint64_t calls() const { return calls_.load(); }

 private:
  std::string base_url_;
  std::string api_key_;
  std::string model_;
  std::atomic<std::uint64_t> calls_{0};
};

/// Fixed response queue for unit tests.
class SequenceBackend : public ChatBackend {
 public:
  explicit SequenceBackend(std::vector<ChatResponse> responses)
      : responses_(std::move(responses)) {}
  ChatResponse complete(const ChatRequest& request) override;
  std::string name() const override { return "sequence"; }
  std::size_t served() const { return next_; }

 private:
  std::vector<ChatResponse> responses_;
  std::size_t next_ = 0;
};

}  // namespace crewml::llm
