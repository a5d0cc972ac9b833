#include "crewml/crews/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "crewml/util/text.hpp"

namespace crewml::crews {

std::vector<std::string> chunk_text(const std::string& text, std::size_t window,
                                    std::size_t stride) {
  std::vector<std::string> chunks;
  if (text.empty()) return chunks;
  if (stride == 0) stride = window;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = std::min(pos + window, text.size());
    // extend to the next whitespace so words stay whole
    while (end < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[end])))
      ++end;
    chunks.push_back(text.substr(pos, end - pos));
    if (end >= text.size()) break;
    pos += stride;
  }
  return chunks;
}

TfIdfIndex::TfIdfIndex(std::vector<std::string> chunks)
    : chunks_(std::move(chunks)) {
  std::vector<std::map<std::size_t, double>> counts(chunks_.size());
  for (std::size_t c = 0; c < chunks_.size(); ++c) {
    for (const auto& tok : tokenize(chunks_[c])) {
      auto [it, inserted] = vocabulary_.emplace(tok, vocabulary_.size());
      ++counts[c][it->second];
    }
  }
  std::vector<std::size_t> df(vocabulary_.size(), 0);
  for (const auto& cnt : counts)
    for (const auto& [term, n] : cnt) ++df[term];
  idf_.resize(vocabulary_.size());
  double n_docs = static_cast<double>(chunks_.size());
  for (std::size_t t = 0; t < idf_.size(); ++t)
    idf_[t] = std::log((n_docs + 1.0) / (static_cast<double>(df[t]) + 1.0)) + 1.0;

  vectors_.resize(chunks_.size());
  norms_.assign(chunks_.size(), 0.0);
  for (std::size_t c = 0; c < chunks_.size(); ++c) {
    for (const auto& [term, n] : counts[c]) {
      double w = (1.0 + std::log(n)) * idf_[term];
      vectors_[c].emplace_back(term, w);
      norms_[c] += w * w;
    }
    norms_[c] = std::sqrt(norms_[c]);
  }
}

std::vector<ScoredChunk> TfIdfIndex::query(const std::string& text,
                                           std::size_t k) const {
  std::map<std::size_t, double> qcounts;
  for (const auto& tok : tokenize(text)) {
    auto it = vocabulary_.find(tok);
    if (it != vocabulary_.end()) ++qcounts[it->second];
  }
  std::map<std::size_t, double> qvec;
  double qnorm = 0.0;
  for (const auto& [term, n] : qcounts) {
    double w = (1.0 + std::log(n)) * idf_[term];
    qvec[term] = w;
    qnorm += w * w;
  }
  qnorm = std::sqrt(qnorm);

  std::vector<ScoredChunk> scored;
  for (std::size_t c = 0; c < chunks_.size(); ++c) {
    double dot = 0.0;
    for (const auto& [term, w] : vectors_[c]) {
      auto it = qvec.find(term);
      if (it != qvec.end()) dot += w * it->second;
    }
    double denom = norms_[c] * qnorm;
    double score = denom > 0.0 ? dot / denom : 0.0;
    scored.push_back(ScoredChunk{c, score, chunks_[c]});
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const ScoredChunk& a, const ScoredChunk& b) {
                     return a.score > b.score;  // stable: ties by chunk index
                   });
  if (scored.size() > k) scored.resize(k);
  return scored;
}

}  // namespace crewml::crews
