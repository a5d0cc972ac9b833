#pragma once

#include <map>
#include <string>
#include <vector>

namespace crewml::crews {

/// Overlapping character windows (default ~500 chars, half-window stride),
/// split on whitespace boundaries where possible.
std::vector<std::string> chunk_text(const std::string& text,
                                    std::size_t window = 500,
                                    std::size_t stride = 250);

struct ScoredChunk {
  std::size_t index = 0;
  double score = 0.0;
  std::string text;
};

/// tf-idf cosine retrieval over document chunks; ties by lower chunk index.
class TfIdfIndex {
 public:
  explicit TfIdfIndex(std::vector<std::string> chunks);
  std::vector<ScoredChunk> query(const std::string& text, std::size_t k) const;
  std::size_t size() const { return chunks_.size(); }

 private:
  std::vector<std::string> chunks_;
  std::vector<std::vector<std::pair<std::size_t, double>>> vectors_;  // term id, weight
  std::vector<double> norms_;
  std::map<std::string, std::size_t> vocabulary_;
  std::vector<double> idf_;
};

}  // namespace crewml::crews
