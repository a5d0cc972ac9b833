#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace crewml::memory {

enum class RecordKind { ToolInput, ActionInput, Context, TaskOutput };

const char* record_kind_name(RecordKind kind);

struct MemoryRecord {
  std::uint64_t id = 0;       // strictly increasing within a store
  std::int64_t timestamp = 0;
  std::string agent_role;
  std::string task_id;
  RecordKind kind = RecordKind::Context;
  std::string content;
};

struct RetrievalFilter {
  std::optional<RecordKind> kind;
  std::optional<std::string> agent_role;
  std::optional<std::string> task_id;
};

/// Capacity-bounded stream of crew interaction records. Retrieval scores
/// 0.5 * recency + 0.5 * token-set Jaccard relevance, both in [0, 1].
class MemoryStore {
 public:
  explicit MemoryStore(std::size_t capacity = 4096);

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return records_.size(); }
  const std::vector<MemoryRecord>& records() const { return records_; }

  /// Appends and returns the record id; evicts the oldest when full.
  /// Throws EmptyContent when record.content is empty.
  std::uint64_t store(RecordKind kind, const std::string& agent_role,
                      const std::string& task_id, const std::string& content,
                      std::int64_t timestamp = 0);

  std::vector<MemoryRecord> retrieve(const std::string& query, std::size_t k,
                                     const RetrievalFilter& filter = {}) const;

  /// Latest task-output record for the task, if any survives eviction.
  std::optional<MemoryRecord> latest_task_output(const std::string& task_id) const;

  /// Concatenated task outputs of the given tasks (in the given order),
  /// truncated to `budget` characters with a truncation marker.
  std::string build_context(const std::vector<std::string>& context_task_ids,
                            std::size_t budget) const;

  /// Filtered views over the one physical stream.
  std::vector<MemoryRecord> short_term(const std::string& task_id) const;
  const std::vector<MemoryRecord>& long_term() const { return records_; }
  std::vector<MemoryRecord> entity(const std::string& entity_token) const;

  /// Line-delimited JSON dump for audit.
  std::string dump_jsonl() const;

 private:
  std::size_t capacity_;
  std::uint64_t next_id_ = 1;
  std::vector<MemoryRecord> records_;
};

}  // namespace crewml::memory
