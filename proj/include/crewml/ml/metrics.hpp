#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace crewml::ml {

struct Confusion {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;
};

struct MetricsReport {
  double accuracy = 0.0;
  double precision = 0.0;  // 0 when no positive predictions
  double recall = 0.0;
  double f1 = 0.0;
  std::optional<double> auc;         // rank statistic on scores
  std::optional<double> auc_label;   // same statistic on hard labels
  std::optional<double> capture_rate;
  Confusion confusion;
};

/// Mann-Whitney AUC: P(score+ > score-) + 0.5 P(tie). Throws SingleClass when
/// y has only one class.
double auc_rank(const std::vector<double>& scores, const std::vector<double>& y);

/// Share of all positives ranked in the top ceil(fraction*n) rows by score;
/// ties keep the original row order. Throws NoPositives.
double capture_rate(const std::vector<double>& scores,
                    const std::vector<double>& y, double fraction = 0.10);

/// AUC / capture are absent when undefined (single-class truth, no positives).
MetricsReport compute_metrics(const std::vector<double>& y_true,
                              const std::vector<double>& y_pred,
                              const std::vector<double>& scores,
                              double capture_fraction = 0.10);

}  // namespace crewml::ml
