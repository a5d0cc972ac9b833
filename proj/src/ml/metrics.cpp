#include "crewml/ml/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "crewml/util/error.hpp"

namespace crewml::ml {

double auc_rank(const std::vector<double>& scores,
                const std::vector<double>& y) {
  if (scores.size() != y.size())
    throw Error(ErrorCode::ArityMismatch, "scores/labels length mismatch");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] < scores[b];
    return a < b;
  });
  // bucket tied scores: each positive beats the negatives below it and draws
  // with negatives in its own bucket
  double pairs = 0.0;
  double neg_below = 0.0, pos_total = 0.0, neg_total = 0.0;
  double bucket_pos = 0.0, bucket_neg = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k > 0 && scores[order[k]] != scores[order[k - 1]]) {
      pairs += bucket_pos * (neg_below + 0.5 * bucket_neg);
      neg_below += bucket_neg;
      pos_total += bucket_pos;
      neg_total += bucket_neg;
      bucket_pos = bucket_neg = 0.0;
    }
    if (y[order[k]] > 0.5)
      bucket_pos += 1.0;
    else
      bucket_neg += 1.0;
  }
  pairs += bucket_pos * (neg_below + 0.5 * bucket_neg);
  pos_total += bucket_pos;
  neg_total += bucket_neg;
  if (pos_total == 0.0 || neg_total == 0.0)
    throw Error(ErrorCode::SingleClass, "AUC needs both classes in y_true");
  return pairs / (pos_total * neg_total);
}

double capture_rate(const std::vector<double>& scores,
                    const std::vector<double>& y, double fraction) {
  if (scores.size() != y.size())
    throw Error(ErrorCode::ArityMismatch, "scores/labels length mismatch");
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw Error(ErrorCode::BadValue, "capture fraction must be in (0,1]");
  double positives = 0.0;
  for (double v : y) positives += v;
  if (positives == 0.0)
    throw Error(ErrorCode::NoPositives, "capture rate needs positive labels");
  std::size_t n = scores.size();
  std::size_t top = static_cast<std::size_t>(
      std::ceil(fraction * static_cast<double>(n)));
  top = std::min(top, n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];  // stable: ties keep original row order
  });
  double captured = 0.0;
  for (std::size_t k = 0; k < top; ++k) captured += y[order[k]];
  return captured / positives;
}

MetricsReport compute_metrics(const std::vector<double>& y_true,
                              const std::vector<double>& y_pred,
                              const std::vector<double>& scores,
                              double capture_fraction) {
  if (y_true.size() != y_pred.size() ||
      (!scores.empty() && scores.size() != y_true.size()))
    throw Error(ErrorCode::ArityMismatch, "metric input length mismatch");
  if (y_true.empty()) throw Error(ErrorCode::BadValue, "empty metric inputs");

  MetricsReport r;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    bool truth = y_true[i] > 0.5;
    bool pred = y_pred[i] > 0.5;
    if (truth && pred) ++r.confusion.tp;
    else if (!truth && pred) ++r.confusion.fp;
    else if (!truth && !pred) ++r.confusion.tn;
    else ++r.confusion.fn;
  }
  double n = static_cast<double>(y_true.size());
  double tp = static_cast<double>(r.confusion.tp);
  double fp = static_cast<double>(r.confusion.fp);
  double tn = static_cast<double>(r.confusion.tn);
  double fn = static_cast<double>(r.confusion.fn);
  r.accuracy = (tp + tn) / n;
  r.precision = tp + fp > 0.0 ? tp / (tp + fp) : 0.0;
  r.recall = tp + fn > 0.0 ? tp / (tp + fn) : 0.0;
  r.f1 = r.precision + r.recall > 0.0
             ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
             : 0.0;
  bool both_classes = (tp + fn > 0.0) && (fp + tn > 0.0);
  if (both_classes) {
    if (!scores.empty()) r.auc = auc_rank(scores, y_true);
    r.auc_label = auc_rank(y_pred, y_true);
  }
  if (tp + fn > 0.0 && !scores.empty())
    r.capture_rate = capture_rate(scores, y_true, capture_fraction);
  return r;
}

}  // namespace crewml::ml
