#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace crewml::kernels {

// Numeric inner loops shared by the estimators and the data tools. Each
// kernel has a plain serial reference under kernels::serial and a dispatching
// version that runs the OpenMP lane when par::enabled(). Both lanes produce
// bit-identical results: reductions use a fixed block association order and
// per-index output slots, so the parity tests assert exact equality.

struct LogisticEval {
  double loss = 0.0;              // mean log-loss + l2 penalty
  std::vector<double> grad;       // d loss / d w, size p
  double grad_intercept = 0.0;
};

namespace serial {

LogisticEval logistic_eval(const std::vector<double>& x, std::size_t n_rows,
                           std::size_t n_cols, const std::vector<double>& y,
                           const std::vector<double>& w, double intercept,
                           double l2);

/// Indices of the k nearest reference rows per query row, squared Euclidean
/// distance, ties broken by lower reference index. Missing-aware: a negative
/// weight entry masks that column out for the query.
std::vector<std::vector<std::size_t>> knn_search(
    const std::vector<double>& ref, std::size_t n_ref,
    const std::vector<double>& query, std::size_t n_query, std::size_t n_cols,
    const std::vector<std::vector<double>>& query_col_weights, std::size_t k);

/// Pairwise-complete Pearson correlation matrix of the given columns;
/// mask[c][r] != 0 marks a missing cell.
std::vector<double> pearson_matrix(
    const std::vector<std::vector<double>>& columns,
    const std::vector<std::vector<std::uint8_t>>& missing);

}  // namespace serial

LogisticEval logistic_eval(const std::vector<double>& x, std::size_t n_rows,
                           std::size_t n_cols, const std::vector<double>& y,
                           const std::vector<double>& w, double intercept,
                           double l2);

std::vector<std::vector<std::size_t>> knn_search(
    const std::vector<double>& ref, std::size_t n_ref,
    const std::vector<double>& query, std::size_t n_query, std::size_t n_cols,
    const std::vector<std::vector<double>>& query_col_weights, std::size_t k);

std::vector<double> pearson_matrix(
    const std::vector<std::vector<double>>& columns,
    const std::vector<std::vector<std::uint8_t>>& missing);

}  // namespace crewml::kernels
