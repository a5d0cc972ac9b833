#include "crewml/cli/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "crewml/util/error.hpp"
#include "crewml/util/rng.hpp"

namespace crewml::cli {

tab::Table generate_synthetic_dataset(std::size_t n_rows,
                                      std::size_t n_numeric,
                                      std::size_t n_categorical,
                                      double imbalance, double signal_strength,
                                      std::uint64_t seed) {
  if (!(imbalance > 0.5 && imbalance < 1.0))
    throw Error(ErrorCode::BadImbalance,
                "imbalance must be in (0.5, 1), got " + std::to_string(imbalance));
  if (n_rows < 100)
    throw Error(ErrorCode::BadValue, "n_rows must be >= 100");
  if (n_numeric == 0)
    throw Error(ErrorCode::BadValue, "need at least one numeric feature");

  Rng feature_rng = Rng::substream(seed, "synth");
  std::vector<double> x(n_rows * n_numeric);
  for (double& v : x) v = feature_rng.gauss();

  Rng weight_rng = Rng::substream(seed, "synth_w");
  std::vector<double> w(n_numeric);
  double norm = 0.0;
  for (double& v : w) {
    v = weight_rng.gauss();
    norm += v * v;
  }
  norm = std::sqrt(norm);
  for (double& v : w) v /= norm > 0.0 ? norm : 1.0;

  // exact minority count via noisy-logit ranking: rows with the largest
  // logit + Gumbel noise become positives, so the positive set follows the
  // signal while the class counts land exactly on target
  Rng label_rng = Rng::substream(seed, "synth_label");
  std::vector<double> utility(n_rows);
  for (std::size_t i = 0; i < n_rows; ++i) {
    double logit = 0.0;
    for (std::size_t j = 0; j < n_numeric; ++j)
      logit += w[j] * x[i * n_numeric + j];
    double u = label_rng.uniform();
    while (u <= 0.0) u = label_rng.uniform();
    double gumbel = -std::log(-std::log(u));
    utility[i] = signal_strength * logit + gumbel;
  }
  std::size_t minority = static_cast<std::size_t>(
      std::llround((1.0 - imbalance) * static_cast<double>(n_rows)));
  minority = std::max<std::size_t>(1, std::min(minority, n_rows - 1));
  std::vector<std::size_t> order(n_rows);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return utility[a] > utility[b];
  });
  std::vector<double> y(n_rows, 0.0);
  for (std::size_t k = 0; k < minority; ++k) y[order[k]] = 1.0;

  // class-dependent categorical frequencies over a 3-letter alphabet
  Rng cat_rng = Rng::substream(seed, "synth_cat");
  static const char* kAlphabet[3] = {"A", "B", "C"};
  tab::Table table;
  for (std::size_t j = 0; j < n_numeric; ++j) {
    tab::Column col;
    col.name = "x" + std::to_string(j + 1);
    col.num.resize(n_rows);
    for (std::size_t i = 0; i < n_rows; ++i) col.num[i] = x[i * n_numeric + j];
    table.add_column(std::move(col));
  }
  for (std::size_t j = 0; j < n_categorical; ++j) {
    tab::Column col;
    col.name = "c" + std::to_string(j + 1);
    col.numeric = false;
    col.txt.resize(n_rows);
    double tilt = 0.15 + 0.05 * static_cast<double>(j % 3);
    for (std::size_t i = 0; i < n_rows; ++i) {
      double p_a = y[i] > 0.5 ? 0.5 - tilt : 0.5;
      double p_b = 0.3;
      double u = cat_rng.uniform();
      std::size_t letter = u < p_a ? 0 : (u < p_a + p_b ? 1 : 2);
      col.txt[i] = kAlphabet[letter];
    }
    table.add_column(std::move(col));
  }
  tab::Column target;
  target.name = "target";
  target.num = y;
  table.add_column(std::move(target));
  return table;
}

}  // namespace crewml::cli
