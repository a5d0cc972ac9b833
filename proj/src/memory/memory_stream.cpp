#include "crewml/memory/memory_stream.hpp"

#include <algorithm>

#include <json.hpp>

#include "crewml/util/error.hpp"
#include "crewml/util/text.hpp"

namespace crewml::memory {

const char* record_kind_name(RecordKind kind) {
  switch (kind) {
    case RecordKind::ToolInput: return "tool-input";
    case RecordKind::ActionInput: return "action-input";
    case RecordKind::Context: return "context";
    case RecordKind::TaskOutput: return "task-output";
  }
  return "unknown";
}

MemoryStore::MemoryStore(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) throw Error(ErrorCode::BadValue, "capacity must be >= 1");
}

std::uint64_t MemoryStore::store(RecordKind kind, const std::string& agent_role,
                                 const std::string& task_id,
                                 const std::string& content,
                                 std::int64_t timestamp) {
  if (content.empty())
    throw Error(ErrorCode::EmptyContent, "memory record content is empty");
  MemoryRecord record;
  record.id = next_id_++;
  record.timestamp = timestamp;
  record.agent_role = agent_role;
  record.task_id = task_id;
  record.kind = kind;
  record.content = content;
  records_.push_back(std::move(record));
  if (records_.size() > capacity_)
    records_.erase(records_.begin());  // oldest first
  return records_.back().id;
}

std::vector<MemoryRecord> MemoryStore::retrieve(
    const std::string& query, std::size_t k, const RetrievalFilter& filter) const {
  if (k < 1) throw Error(ErrorCode::BadValue, "k must be >= 1");
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const MemoryRecord& r = records_[i];
    if (filter.kind && r.kind != *filter.kind) continue;
    if (filter.agent_role && r.agent_role != *filter.agent_role) continue;
    if (filter.task_id && r.task_id != *filter.task_id) continue;
    candidates.push_back(i);
  }
  if (candidates.empty()) return {};

  std::size_t m = candidates.size();
  std::vector<std::pair<double, std::size_t>> scored;  // (score, index)
  scored.reserve(m);
  for (std::size_t pos = 0; pos < m; ++pos) {
    double recency = m == 1 ? 1.0
                            : static_cast<double>(pos) /
                                  static_cast<double>(m - 1);
    double relevance = jaccard(query, records_[candidates[pos]].content);
    scored.emplace_back(0.5 * recency + 0.5 * relevance, candidates[pos]);
  }
  std::sort(scored.begin(), scored.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return records_[a.second].id > records_[b.second].id;  // ties: higher id
  });
  std::vector<MemoryRecord> out;
  for (std::size_t i = 0; i < std::min(k, scored.size()); ++i)
    out.push_back(records_[scored[i].second]);
  return out;
}

std::optional<MemoryRecord> MemoryStore::latest_task_output(
    const std::string& task_id) const {
  for (auto it = records_.rbegin(); it != records_.rend(); ++it)
    if (it->kind == RecordKind::TaskOutput && it->task_id == task_id) return *it;
  return std::nullopt;
}

std::string MemoryStore::build_context(
    const std::vector<std::string>& context_task_ids, std::size_t budget) const {
  if (budget == 0) throw Error(ErrorCode::BadValue, "budget must be > 0");
  static const std::string kMarker = "\n[context truncated]";
  std::string out;
  for (const auto& task_id : context_task_ids) {
    auto record = latest_task_output(task_id);
    if (!record) continue;
    if (!out.empty()) out += "\n\n";
    out += record->content;
    if (out.size() > budget) break;
  }
  if (out.size() > budget) {
    std::size_t keep = budget > kMarker.size() ? budget - kMarker.size() : 0;
    out = out.substr(0, keep) + kMarker;
  }
  return out;
}

std::vector<MemoryRecord> MemoryStore::short_term(const std::string& task_id) const {
  std::vector<MemoryRecord> out;
  for (const auto& r : records_)
    if (r.task_id == task_id) out.push_back(r);
  return out;
}

std::vector<MemoryRecord> MemoryStore::entity(const std::string& entity_token) const {
  std::vector<MemoryRecord> out;
  for (const auto& r : records_)
    if (contains_ci(r.content, entity_token)) out.push_back(r);
  return out;
}

std::string MemoryStore::dump_jsonl() const {
  std::string out;
  for (const auto& r : records_) {
    nlohmann::json j{{"id", r.id},
                     {"timestamp", r.timestamp},
                     {"agent_role", r.agent_role},
                     {"task_id", r.task_id},
                     {"kind", record_kind_name(r.kind)},
                     {"content", r.content}};
    out += j.dump();
    out += "\n";
  }
  return out;
}

}  // namespace crewml::memory
