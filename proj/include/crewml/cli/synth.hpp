#pragma once

#include <cstdint>

#include "crewml/tab/table.hpp"

namespace crewml::cli {

/// Synthetic binary-classification table: standard-normal numeric features,
/// a linear logit of strength `signal_strength`, small-alphabet categorical
/// columns with class-dependent frequencies, and an exact majority fraction
/// of `imbalance`. Deterministic per seed.
tab::Table generate_synthetic_dataset(std::size_t n_rows,
                                      std::size_t n_numeric,
                                      std::size_t n_categorical,
                                      double imbalance, double signal_strength,
                                      std::uint64_t seed);

}  // namespace crewml::cli
