// Compares the serial reference kernels against the OpenMP lanes on sizes
// representative of the credit-risk pipeline, and checks that both lanes
// produce bit-identical results.
//
//   bench_kernels [n_rows] [n_cols] [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "crewml/kernels/kernels.hpp"
#include "crewml/ml/estimator.hpp"
#include "crewml/util/parallel.hpp"
#include "crewml/util/rng.hpp"

using namespace crewml;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Case {
  std::vector<double> x;
  std::vector<double> y;
  std::size_t n_rows;
  std::size_t n_cols;
};

Case make_case(std::size_t n_rows, std::size_t n_cols, std::uint64_t seed) {
  Case c;
  c.n_rows = n_rows;
  c.n_cols = n_cols;
  Rng rng = Rng::substream(seed, "bench");
  c.x.resize(n_rows * n_cols);
  for (double& v : c.x) v = rng.gauss();
  c.y.resize(n_rows);
  for (std::size_t i = 0; i < n_rows; ++i) {
    double margin = c.x[i * n_cols] + 0.5 * c.x[i * n_cols + 1 % n_cols];
    c.y[i] = margin + rng.gauss() > 0.0 ? 1.0 : 0.0;
  }
  return c;
}

template <typename F>
double time_best_of(int repeats, F&& fn) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    auto start = Clock::now();
    fn();
    double t = ms_since(start);
    if (t < best) best = t;
  }
  return best;
}

void report(const char* name, double serial_ms, double parallel_ms, bool equal) {
  std::printf("%-24s serial %9.2f ms   openmp %9.2f ms   speedup %5.2fx   %s\n",
              name, serial_ms, parallel_ms,
              parallel_ms > 0 ? serial_ms / parallel_ms : 0.0,
              equal ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t n_rows = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 40000;
  std::size_t n_cols = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 10;
  int repeats = argc > 3 ? std::atoi(argv[3]) : 3;

  std::printf("kernel benchmark: %zu rows x %zu cols, best of %d, %d thread(s)\n\n",
              n_rows, n_cols, repeats, par::max_threads());
  Case c = make_case(n_rows, n_cols, 17);

  // logistic loss + gradient
  {
    std::vector<double> w(n_cols, 0.05);
    kernels::LogisticEval serial_out, parallel_out;
    double ts = time_best_of(repeats, [&] {
      serial_out = kernels::serial::logistic_eval(c.x, c.n_rows, c.n_cols, c.y,
                                                  w, 0.1, 0.01);
    });
    par::set_enabled(true);
    double tp = time_best_of(repeats, [&] {
      parallel_out = kernels::logistic_eval(c.x, c.n_rows, c.n_cols, c.y, w,
                                            0.1, 0.01);
    });
    bool equal = serial_out.loss == parallel_out.loss &&
                 serial_out.grad == parallel_out.grad &&
                 serial_out.grad_intercept == parallel_out.grad_intercept;
    report("logistic_eval", ts, tp, equal);
  }

  // k-nearest-neighbor search (imputer / SMOTE workload)
  {
    std::size_t n_ref = std::min<std::size_t>(c.n_rows, 4000);
    std::size_t n_query = std::min<std::size_t>(c.n_rows, 2000);
    std::vector<std::vector<double>> weights(n_query,
                                             std::vector<double>(n_cols, 1.0));
    std::vector<std::vector<std::size_t>> serial_out, parallel_out;
    double ts = time_best_of(repeats, [&] {
      serial_out = kernels::serial::knn_search(c.x, n_ref, c.x, n_query,
                                               c.n_cols, weights, 5);
    });
    par::set_enabled(true);
    double tp = time_best_of(repeats, [&] {
      parallel_out =
          kernels::knn_search(c.x, n_ref, c.x, n_query, c.n_cols, weights, 5);
    });
    report("knn_search", ts, tp, serial_out == parallel_out);
  }

  // correlation matrix (EDA workload)
  {
    std::vector<std::vector<double>> columns(n_cols);
    std::vector<std::vector<std::uint8_t>> missing(n_cols);
    for (std::size_t j = 0; j < n_cols; ++j) {
      columns[j].resize(c.n_rows);
      for (std::size_t i = 0; i < c.n_rows; ++i)
        columns[j][i] = c.x[i * n_cols + j];
    }
    std::vector<double> serial_out, parallel_out;
    double ts = time_best_of(repeats, [&] {
      serial_out = kernels::serial::pearson_matrix(columns, missing);
    });
    par::set_enabled(true);
    double tp = time_best_of(repeats, [&] {
      parallel_out = kernels::pearson_matrix(columns, missing);
    });
    report("pearson_matrix", ts, tp, serial_out == parallel_out);
  }

  // full estimator fits through the dispatching kernels
  {
    std::vector<std::string> names(n_cols);
    for (std::size_t j = 0; j < n_cols; ++j) names[j] = "f" + std::to_string(j);
    ml::Hyperparams params{{"learning_rate", 0.1},
                           {"max_depth", 3},
                           {"n_estimators", 20}};
    std::string serial_json, parallel_json;
    par::set_enabled(false);
    double ts = time_best_of(1, [&] {
      serial_json = ml::model_to_json(ml::fit(ml::Family::GradientBoosting,
                                              params, c.x, c.n_rows, c.n_cols,
                                              c.y, names, 42));
    });
    par::set_enabled(true);
    double tp = time_best_of(1, [&] {
      parallel_json = ml::model_to_json(ml::fit(ml::Family::GradientBoosting,
                                                params, c.x, c.n_rows, c.n_cols,
                                                c.y, names, 42));
    });
    report("gbt_fit(20 trees)", ts, tp, serial_json == parallel_json);
  }
  {
    std::vector<std::string> names(n_cols);
    for (std::size_t j = 0; j < n_cols; ++j) names[j] = "f" + std::to_string(j);
    ml::Hyperparams params{{"n_estimators", 50}, {"max_depth", 8}};
    std::string serial_json, parallel_json;
    par::set_enabled(false);
    double ts = time_best_of(1, [&] {
      serial_json = ml::model_to_json(ml::fit(ml::Family::RandomForest, params,
                                              c.x, c.n_rows, c.n_cols, c.y,
                                              names, 42));
    });
    par::set_enabled(true);
    double tp = time_best_of(1, [&] {
      parallel_json = ml::model_to_json(ml::fit(ml::Family::RandomForest,
                                                params, c.x, c.n_rows, c.n_cols,
                                                c.y, names, 42));
    });
    report("rf_fit(50 trees)", ts, tp, serial_json == parallel_json);
  }

  par::set_enabled(true);
  return 0;
}
