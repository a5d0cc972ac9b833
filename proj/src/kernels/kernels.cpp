#include "crewml/kernels/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "crewml/util/parallel.hpp"

namespace crewml::kernels {

namespace {

constexpr std::int64_t kBlock = 2048;

// log(1 + exp(z)) without overflow
inline double softplus(double z) {
  if (z > 0.0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

inline double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

// One block of rows accumulated into loss/grad partials. Both lanes combine
// block partials in block order, so the association order is fixed.
void logistic_block(const std::vector<double>& x, std::size_t n_cols,
                    const std::vector<double>& y, const std::vector<double>& w,
                    double intercept, std::int64_t lo, std::int64_t hi,
                    double& loss, std::vector<double>& grad,
                    double& grad_intercept) {
  for (std::int64_t i = lo; i < hi; ++i) {
    const double* row = &x[static_cast<std::size_t>(i) * n_cols];
    double z = intercept;
    for (std::size_t j = 0; j < n_cols; ++j) z += w[j] * row[j];
    loss += softplus(z) - y[static_cast<std::size_t>(i)] * z;
    double r = sigmoid(z) - y[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < n_cols; ++j) grad[j] += r * row[j];
    grad_intercept += r;
  }
}

LogisticEval combine_logistic_blocks(
    std::size_t n_rows, std::size_t n_cols, const std::vector<double>& w,
    double l2, const std::vector<double>& block_loss,
    const std::vector<std::vector<double>>& block_grad,
    const std::vector<double>& block_gi) {
  LogisticEval out;
  out.grad.assign(n_cols, 0.0);
  double loss = 0.0;
  double gi = 0.0;
  for (std::size_t b = 0; b < block_loss.size(); ++b) {
    loss += block_loss[b];
    gi += block_gi[b];
    for (std::size_t j = 0; j < n_cols; ++j) out.grad[j] += block_grad[b][j];
  }
  double inv_n = 1.0 / static_cast<double>(n_rows);
  double penalty = 0.0;
  for (std::size_t j = 0; j < n_cols; ++j) {
    out.grad[j] = out.grad[j] * inv_n + l2 * w[j];
    penalty += w[j] * w[j];
  }
  out.loss = loss * inv_n + 0.5 * l2 * penalty;
  out.grad_intercept = gi * inv_n;
  return out;
}

struct Neighbor {
  double dist;
  std::size_t index;
};

void knn_for_query(const std::vector<double>& ref, std::size_t n_ref,
                   const double* q, std::size_t n_cols,
                   const std::vector<double>& col_weight, std::size_t k,
                   std::vector<std::size_t>& out) {
  std::vector<Neighbor> heap;  // max-heap on (dist, index)
  heap.reserve(k + 1);
  auto worse = [](const Neighbor& a, const Neighbor& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    return a.index < b.index;
  };
  for (std::size_t r = 0; r < n_ref; ++r) {
    const double* row = &ref[r * n_cols];
    double d = 0.0;
    for (std::size_t c = 0; c < n_cols; ++c) {
      double wgt = col_weight[c];
      if (wgt <= 0.0) continue;
      double diff = row[c] - q[c];
      d += wgt * diff * diff;
    }
    Neighbor nb{d, r};
    if (heap.size() < k) {
      heap.push_back(nb);
      std::push_heap(heap.begin(), heap.end(), worse);
    } else if (worse(nb, heap.front())) {
      std::pop_heap(heap.begin(), heap.end(), worse);
      heap.back() = nb;
      std::push_heap(heap.begin(), heap.end(), worse);
    }
  }
  std::sort_heap(heap.begin(), heap.end(), worse);
  out.resize(heap.size());
  for (std::size_t i = 0; i < heap.size(); ++i) out[i] = heap[i].index;
}

// single-pass pairwise-complete pearson for one column pair
double pearson_pair(const std::vector<double>& a,
                    const std::vector<std::uint8_t>& ma,
                    const std::vector<double>& b,
                    const std::vector<std::uint8_t>& mb) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
  std::size_t n = 0;
  for (std::size_t r = 0; r < a.size(); ++r) {
    if ((!ma.empty() && ma[r]) || (!mb.empty() && mb[r])) continue;
    double x = a[r];
    double y = b[r];
    sx += x;
    sy += y;
    sxx += x * x;
    syy += y * y;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return 0.0;
  double dn = static_cast<double>(n);
  double cov = sxy - sx * sy / dn;
  double vx = sxx - sx * sx / dn;
  double vy = syy - sy * sy / dn;
  if (vx <= 0.0 || vy <= 0.0) return 0.0;
  return cov / std::sqrt(vx * vy);
}

}  // namespace

namespace serial {

LogisticEval logistic_eval(const std::vector<double>& x, std::size_t n_rows,
                           std::size_t n_cols, const std::vector<double>& y,
                           const std::vector<double>& w, double intercept,
                           double l2) {
  std::int64_t n = static_cast<std::int64_t>(n_rows);
  std::int64_t n_blocks = (n + kBlock - 1) / kBlock;
  std::vector<double> bl(static_cast<std::size_t>(n_blocks), 0.0);
  std::vector<double> bgi(static_cast<std::size_t>(n_blocks), 0.0);
  std::vector<std::vector<double>> bg(static_cast<std::size_t>(n_blocks),
                                      std::vector<double>(n_cols, 0.0));
  for (std::int64_t b = 0; b < n_blocks; ++b) {
    std::int64_t lo = b * kBlock;
    std::int64_t hi = std::min(lo + kBlock, n);
    logistic_block(x, n_cols, y, w, intercept, lo, hi,
                   bl[static_cast<std::size_t>(b)],
                   bg[static_cast<std::size_t>(b)],
                   bgi[static_cast<std::size_t>(b)]);
  }
  return combine_logistic_blocks(n_rows, n_cols, w, l2, bl, bg, bgi);
}

std::vector<std::vector<std::size_t>> knn_search(
    const std::vector<double>& ref, std::size_t n_ref,
    const std::vector<double>& query, std::size_t n_query, std::size_t n_cols,
    const std::vector<std::vector<double>>& query_col_weights, std::size_t k) {
  std::vector<std::vector<std::size_t>> out(n_query);
  for (std::size_t q = 0; q < n_query; ++q) {
    knn_for_query(ref, n_ref, &query[q * n_cols], n_cols,
                  query_col_weights[q], k, out[q]);
  }
  return out;
}

std::vector<double> pearson_matrix(
    const std::vector<std::vector<double>>& columns,
    const std::vector<std::vector<std::uint8_t>>& missing) {
  std::size_t m = columns.size();
  std::vector<double> corr(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    corr[i * m + i] = 1.0;
    for (std::size_t j = i + 1; j < m; ++j) {
      double r = pearson_pair(columns[i], missing[i], columns[j], missing[j]);
      corr[i * m + j] = r;
      corr[j * m + i] = r;
    }
  }
  return corr;
}

}  // namespace serial

LogisticEval logistic_eval(const std::vector<double>& x, std::size_t n_rows,
                           std::size_t n_cols, const std::vector<double>& y,
                           const std::vector<double>& w, double intercept,
                           double l2) {
  std::int64_t n = static_cast<std::int64_t>(n_rows);
  std::int64_t n_blocks = (n + kBlock - 1) / kBlock;
  std::vector<double> bl(static_cast<std::size_t>(n_blocks), 0.0);
  std::vector<double> bgi(static_cast<std::size_t>(n_blocks), 0.0);
  std::vector<std::vector<double>> bg(static_cast<std::size_t>(n_blocks),
                                      std::vector<double>(n_cols, 0.0));
  par::parallel_for(n_blocks, [&](std::int64_t b) {
    std::int64_t lo = b * kBlock;
    std::int64_t hi = std::min(lo + kBlock, n);
    logistic_block(x, n_cols, y, w, intercept, lo, hi,
                   bl[static_cast<std::size_t>(b)],
                   bg[static_cast<std::size_t>(b)],
                   bgi[static_cast<std::size_t>(b)]);
  });
  return combine_logistic_blocks(n_rows, n_cols, w, l2, bl, bg, bgi);
}

std::vector<std::vector<std::size_t>> knn_search(
    const std::vector<double>& ref, std::size_t n_ref,
    const std::vector<double>& query, std::size_t n_query, std::size_t n_cols,
    const std::vector<std::vector<double>>& query_col_weights, std::size_t k) {
  std::vector<std::vector<std::size_t>> out(n_query);
  par::parallel_for(static_cast<std::int64_t>(n_query), [&](std::int64_t q) {
    knn_for_query(ref, n_ref, &query[static_cast<std::size_t>(q) * n_cols],
                  n_cols, query_col_weights[static_cast<std::size_t>(q)], k,
                  out[static_cast<std::size_t>(q)]);
  });
  return out;
}

std::vector<double> pearson_matrix(
    const std::vector<std::vector<double>>& columns,
    const std::vector<std::vector<std::uint8_t>>& missing) {
  std::size_t m = columns.size();
  std::vector<double> corr(m * m, 0.0);
  // flatten the upper triangle so the pairs parallelize evenly
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(m * (m - 1) / 2);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
  par::parallel_for(static_cast<std::int64_t>(pairs.size()),
                    [&](std::int64_t p) {
                      auto [i, j] = pairs[static_cast<std::size_t>(p)];
                      double r = pearson_pair(columns[i], missing[i],
                                              columns[j], missing[j]);
                      corr[i * m + j] = r;
                      corr[j * m + i] = r;
                    });
  for (std::size_t i = 0; i < m; ++i) corr[i * m + i] = 1.0;
  return corr;
}

}  // namespace crewml::kernels
