#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "crewml/tab/schema.hpp"
#include "crewml/tab/table.hpp"

namespace crewml::tab {

/// Seeded shuffle (substream "split"), first floor(ratio*n) rows to train.
std::pair<Table, Table> train_test_split(const Table& table, double ratio,
                                         std::uint64_t seed);

// Label encoding: text categories -> dense integer codes in first-appearance
// order, fitted on train only. Unseen categories map to code = cardinality.
struct EncoderState {
  // column name -> category -> code, plus the fitted cardinality
  std::map<std::string, std::map<std::string, int>> mappings;
  std::map<std::string, int> cardinalities;
};

EncoderState fit_label_encoders(const Table& train,
                                const std::vector<ColumnSchema>& schema);
Table apply_label_encoders(const EncoderState& state, const Table& table);

// KNN imputation fitted on train: references are the train rows that are
// complete in the numeric distance columns (standardized by train stats).
struct ImputerState {
  std::size_t k = 5;
  std::vector<std::string> numeric_columns;
  std::vector<double> ref_matrix;   // standardized, row-major
  std::size_t n_ref = 0;
  std::map<std::string, double> column_means;   // raw-scale fallback
  std::map<std::string, double> column_stds;    // train sample std
  std::map<std::string, double> categorical_modes;  // numeric-coded columns
  std::map<std::string, std::string> text_modes;
};

ImputerState fit_knn_imputer(const Table& train,
                             const std::vector<ColumnSchema>& schema,
                             std::size_t k = 5);
Table apply_knn_imputer(const ImputerState& state, const Table& table,
                        const std::vector<ColumnSchema>& schema);
/// fit + apply in one call (train-fitted, applied to `table`)
Table knn_impute(const Table& train, const Table& table,
                 const std::vector<ColumnSchema>& schema, std::size_t k = 5);

/// SMOTE oversampling: synthetic minority rows interpolated toward one of the
/// k nearest minority neighbors (substream "smote"); balanced output.
Table smote(const Table& table, const std::string& target, std::size_t k,
            std::uint64_t seed);

/// Majority rows subsampled without replacement to the minority count
/// (substream "downsample"); original row order preserved.
Table random_downsample(const Table& table, const std::string& target,
                        std::uint64_t seed);

/// Inner join on the key column (left row order, then right matches in order).
Table merge_on_key(const Table& left, const Table& right,
                   const std::string& key);

/// Remove exact duplicate rows, keeping the first occurrence.
Table dedupe(const Table& table);

/// STATUS in {0,1,C,X} -> 0 (non-default), {2,3,4,5} -> 1 (default);
/// the column is renamed to `target_name`.
Table map_target_status(const Table& table, const std::string& status_column,
                        const std::string& target_name);

}  // namespace crewml::tab
