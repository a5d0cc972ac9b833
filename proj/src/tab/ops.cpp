#include "crewml/tab/ops.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "crewml/kernels/kernels.hpp"
#include "crewml/util/error.hpp"
#include "crewml/util/rng.hpp"

namespace crewml::tab {

std::pair<Table, Table> train_test_split(const Table& table, double ratio,
                                         std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0))
    throw Error(ErrorCode::BadValue, "split ratio must be in (0,1)");
  std::size_t n = table.n_rows();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng = Rng::substream(seed, "split");
  rng.shuffle(order);
  std::size_t n_train = static_cast<std::size_t>(
      std::floor(ratio * static_cast<double>(n)));
  std::vector<std::size_t> train_rows(order.begin(), order.begin() + n_train);
  std::vector<std::size_t> test_rows(order.begin() + n_train, order.end());
  return {table.select_rows(train_rows), table.select_rows(test_rows)};
}

EncoderState fit_label_encoders(const Table& train,
                                const std::vector<ColumnSchema>& schema) {
  EncoderState state;
  for (const auto& s : schema) {
    if (s.kind != ColumnKind::Categorical) continue;
    auto idx = train.find_column(s.name);
    if (!idx) continue;
    const Column& col = train.column(*idx);
    if (col.numeric) continue;  // already coded
    std::map<std::string, int> mapping;
    for (std::size_t r = 0; r < train.n_rows(); ++r) {
      if (col.is_missing(r)) continue;
      if (!mapping.count(col.txt[r]))
        mapping.emplace(col.txt[r], static_cast<int>(mapping.size()));
    }
    state.cardinalities[s.name] = static_cast<int>(mapping.size());
    state.mappings[s.name] = std::move(mapping);
  }
  return state;
}

Table apply_label_encoders(const EncoderState& state, const Table& table) {
  Table out;
  for (const auto& col : table.columns()) {
    auto it = state.mappings.find(col.name);
    if (it == state.mappings.end() || col.numeric) {
      out.add_column(col);
      continue;
    }
    Column nc;
    nc.name = col.name;
    nc.numeric = true;
    nc.num.resize(table.n_rows(), 0.0);
    int unseen_code = state.cardinalities.at(col.name);
    for (std::size_t r = 0; r < table.n_rows(); ++r) {
      if (col.is_missing(r)) {
        nc.set_missing(r, table.n_rows());
        continue;
      }
      auto code = it->second.find(col.txt[r]);
      nc.num[r] = code != it->second.end() ? code->second : unseen_code;
    }
    if (!nc.missing.empty()) nc.missing.resize(table.n_rows(), 0);
    out.add_column(std::move(nc));
  }
  out.set_n_rows(table.n_rows());
  return out;
}

namespace {

double numeric_mode(const Column& col) {
  std::map<double, std::size_t> counts;
  for (std::size_t r = 0; r < col.num.size(); ++r) {
    if (col.is_missing(r)) continue;
    ++counts[col.num[r]];
  }
  double best = 0.0;
  std::size_t best_count = 0;
  for (const auto& [v, c] : counts) {
    if (c > best_count) {  // ties keep the smaller value (map order)
      best = v;
      best_count = c;
    }
  }
  return best;
}

std::string text_mode(const Column& col) {
  std::unordered_map<std::string, std::size_t> counts;
  std::vector<std::string> order;
  for (std::size_t r = 0; r < col.txt.size(); ++r) {
    if (col.is_missing(r)) continue;
    auto [it, inserted] = counts.emplace(col.txt[r], 0);
    if (inserted) order.push_back(col.txt[r]);
    ++it->second;
  }
  std::string best;
  std::size_t best_count = 0;
  for (const auto& v : order) {  // ties keep first appearance
    if (counts[v] > best_count) {
      best = v;
      best_count = counts[v];
    }
  }
  return best;
}

}  // namespace

ImputerState fit_knn_imputer(const Table& train,
                             const std::vector<ColumnSchema>& schema,
                             std::size_t k) {
  if (k < 1) throw Error(ErrorCode::BadValue, "imputer k must be >= 1");
  ImputerState state;
  state.k = k;
  for (const auto& s : schema) {
    auto idx = train.find_column(s.name);
    if (!idx) continue;
    const Column& col = train.column(*idx);
    if (s.kind == ColumnKind::Numeric && col.numeric) {
      state.numeric_columns.push_back(s.name);
    } else if (col.numeric) {
      if (s.kind == ColumnKind::Categorical || s.kind == ColumnKind::BinaryFlag)
        state.categorical_modes[s.name] = numeric_mode(col);
    } else {
      state.text_modes[s.name] = text_mode(col);
    }
  }
  // train stats for standardization and the mean fallback
  for (const auto& name : state.numeric_columns) {
    const Column& col = train.column(train.require_column(name));
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t r = 0; r < train.n_rows(); ++r) {
      if (col.is_missing(r)) continue;
      sum += col.num[r];
      ++n;
    }
    double mean = n ? sum / static_cast<double>(n) : 0.0;
    double ss = 0.0;
    for (std::size_t r = 0; r < train.n_rows(); ++r) {
      if (col.is_missing(r)) continue;
      double d = col.num[r] - mean;
      ss += d * d;
    }
    state.column_means[name] = mean;
    state.column_stds[name] =
        n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
  }
  // reference rows: complete in every numeric distance column
  std::size_t d = state.numeric_columns.size();
  std::vector<const Column*> num_cols;
  for (const auto& name : state.numeric_columns)
    num_cols.push_back(&train.column(train.require_column(name)));
  for (std::size_t r = 0; r < train.n_rows(); ++r) {
    bool complete = true;
    for (const Column* c : num_cols)
      if (c->is_missing(r)) complete = false;
    if (!complete) continue;
    for (std::size_t j = 0; j < d; ++j) {
      const auto& name = state.numeric_columns[j];
      double sd = state.column_stds[name];
      double v = num_cols[j]->num[r];
      state.ref_matrix.push_back(sd > 0.0 ? (v - state.column_means[name]) / sd
                                          : 0.0);
    }
    ++state.n_ref;
  }
  if (d > 0 && state.n_ref < k)
    throw Error(ErrorCode::TooFewCompleteRows,
                "need at least " + std::to_string(k) + " complete rows, have " +
                    std::to_string(state.n_ref));
  return state;
}

Table apply_knn_imputer(const ImputerState& state, const Table& table,
                        const std::vector<ColumnSchema>& schema) {
  std::size_t d = state.numeric_columns.size();
  std::vector<std::size_t> num_idx;
  for (const auto& name : state.numeric_columns)
    num_idx.push_back(table.require_column(name));

  // queries: rows with at least one missing numeric cell
  std::vector<std::size_t> query_rows;
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    for (std::size_t j = 0; j < d; ++j) {
      if (table.column(num_idx[j]).is_missing(r)) {
        query_rows.push_back(r);
        break;
      }
    }
  }

  std::vector<double> query;
  std::vector<std::vector<double>> weights;
  query.reserve(query_rows.size() * d);
  for (std::size_t qr : query_rows) {
    std::vector<double> w(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
      const Column& col = table.column(num_idx[j]);
      const auto& name = state.numeric_columns[j];
      double sd = state.column_stds.at(name);
      if (col.is_missing(qr) || sd <= 0.0) {
        query.push_back(0.0);
      } else {
        query.push_back((col.num[qr] - state.column_means.at(name)) / sd);
        w[j] = 1.0;
      }
    }
    weights.push_back(std::move(w));
  }

  std::vector<std::vector<std::size_t>> donors;
  if (!query_rows.empty() && state.n_ref > 0) {
    donors = kernels::knn_search(state.ref_matrix, state.n_ref, query,
                                 query_rows.size(), d, weights,
                                 std::min(state.k, state.n_ref));
  }

  Table out;
  for (const auto& col : table.columns()) out.add_column(col);
  out.set_n_rows(table.n_rows());

  // numeric fills
  for (std::size_t qi = 0; qi < query_rows.size(); ++qi) {
    std::size_t r = query_rows[qi];
    bool has_distance_col = false;
    for (double w : weights[qi])
      if (w > 0.0) has_distance_col = true;
    for (std::size_t j = 0; j < d; ++j) {
      Column& col = out.column(num_idx[j]);
      if (!col.is_missing(r)) continue;
      const auto& name = state.numeric_columns[j];
      double fill;
      if (!has_distance_col || donors.empty() || donors[qi].empty()) {
        fill = state.column_means.at(name);
      } else {
        double z = 0.0;
        for (std::size_t ref : donors[qi]) z += state.ref_matrix[ref * d + j];
        z /= static_cast<double>(donors[qi].size());
        fill = state.column_means.at(name) + state.column_stds.at(name) * z;
      }
      col.num[r] = fill;
      col.missing[r] = 0;
    }
  }

  // categorical / flag fills with the train mode
  for (const auto& s : schema) {
    auto idx = out.find_column(s.name);
    if (!idx) continue;
    Column& col = out.column(*idx);
    if (col.missing.empty()) continue;
    if (col.numeric) {
      auto it = state.categorical_modes.find(s.name);
      if (it == state.categorical_modes.end()) continue;
      for (std::size_t r = 0; r < table.n_rows(); ++r) {
        if (col.missing[r]) {
          col.num[r] = it->second;
          col.missing[r] = 0;
        }
      }
    } else {
      auto it = state.text_modes.find(s.name);
      if (it == state.text_modes.end()) continue;
      for (std::size_t r = 0; r < table.n_rows(); ++r) {
        if (col.missing[r]) {
          col.txt[r] = it->second;
          col.missing[r] = 0;
        }
      }
    }
  }

  // drop all-clear missing masks so equality checks stay simple
  for (std::size_t c = 0; c < out.n_cols(); ++c) {
    Column& col = out.column(c);
    if (!col.missing.empty() && col.missing_count() == 0) col.missing.clear();
  }
  return out;
}

Table knn_impute(const Table& train, const Table& table,
                 const std::vector<ColumnSchema>& schema, std::size_t k) {
  ImputerState state = fit_knn_imputer(train, schema, k);
  return apply_knn_imputer(state, table, schema);
}

namespace {

struct ClassSplit {
  double minority_value = 0.0;
  double majority_value = 0.0;
  std::vector<std::size_t> minority_rows;
  std::vector<std::size_t> majority_rows;
};

ClassSplit split_classes(const Table& table, const std::string& target) {
  std::size_t t = table.require_column(target);
  const Column& col = table.column(t);
  if (!col.numeric)
    throw Error(ErrorCode::NonBinaryTarget, "target must be numeric");
  std::map<double, std::vector<std::size_t>> by_class;
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    if (col.is_missing(r))
      throw Error(ErrorCode::MissingValuesPresent, "target has missing cells");
    by_class[col.num[r]].push_back(r);
  }
  if (by_class.size() < 2)
    throw Error(ErrorCode::SingleClass, "need two classes in '" + target + "'");
  if (by_class.size() > 2)
    throw Error(ErrorCode::NonBinaryTarget, "more than two classes");
  auto it = by_class.begin();
  auto first = it++;
  auto second = it;
  ClassSplit out;
  if (first->second.size() <= second->second.size()) {
    out.minority_value = first->first;
    out.majority_value = second->first;
    out.minority_rows = first->second;
    out.majority_rows = second->second;
  } else {
    out.minority_value = second->first;
    out.majority_value = first->first;
    out.minority_rows = second->second;
    out.majority_rows = first->second;
  }
  return out;
}

}  // namespace

Table smote(const Table& table, const std::string& target, std::size_t k,
            std::uint64_t seed) {
  ClassSplit cls = split_classes(table, target);
  if (cls.minority_rows.size() < 2)
    throw Error(ErrorCode::MinorityTooSmall,
                "SMOTE needs at least 2 minority rows");
  std::size_t t = table.require_column(target);
  std::vector<std::size_t> feature_cols;
  for (std::size_t c = 0; c < table.n_cols(); ++c) {
    if (c == t) continue;
    const Column& col = table.column(c);
    if (!col.numeric)
      throw Error(ErrorCode::BadValue,
                  "SMOTE requires numeric features; encode '" + col.name +
                      "' first");
    if (col.missing_count() > 0)
      throw Error(ErrorCode::MissingValuesPresent,
                  "SMOTE requires imputed features; '" + col.name +
                      "' has missing cells");
    feature_cols.push_back(c);
  }

  std::size_t n_min = cls.minority_rows.size();
  std::size_t d = feature_cols.size();
  std::vector<double> min_matrix(n_min * d);
  for (std::size_t i = 0; i < n_min; ++i)
    for (std::size_t j = 0; j < d; ++j)
      min_matrix[i * d + j] = table.column(feature_cols[j]).num[cls.minority_rows[i]];

  // k+1 nearest within the minority itself: drop self-matches
  std::size_t k_eff = std::min(k, n_min - 1);
  std::vector<std::vector<double>> w(n_min, std::vector<double>(d, 1.0));
  auto raw_nn = kernels::knn_search(min_matrix, n_min, min_matrix, n_min, d, w,
                                    k_eff + 1);
  std::vector<std::vector<std::size_t>> neighbors(n_min);
  for (std::size_t i = 0; i < n_min; ++i) {
    for (std::size_t nb : raw_nn[i]) {
      if (nb == i) continue;
      neighbors[i].push_back(nb);
      if (neighbors[i].size() == k_eff) break;
    }
    // duplicate points can leave the self index out of the k+1 set
    if (neighbors[i].size() < k_eff)
      for (std::size_t nb : raw_nn[i])
        if (nb != i && neighbors[i].size() < k_eff &&
            std::find(neighbors[i].begin(), neighbors[i].end(), nb) ==
                neighbors[i].end())
          neighbors[i].push_back(nb);
  }

  std::size_t n_syn = cls.majority_rows.size() - n_min;
  Rng rng = Rng::substream(seed, "smote");
  Table out;
  for (const auto& col : table.columns()) out.add_column(col);
  out.set_n_rows(table.n_rows());
  for (std::size_t s = 0; s < n_syn; ++s) {
    std::size_t i = s % n_min;
    std::size_t nb = neighbors[i][static_cast<std::size_t>(
        rng.below(neighbors[i].size()))];
    double lambda = rng.uniform();
    std::size_t new_row = out.n_rows();
    for (std::size_t c = 0; c < out.n_cols(); ++c) {
      Column& col = out.column(c);
      col.num.push_back(c == t ? cls.minority_value : 0.0);
      if (!col.missing.empty()) col.missing.push_back(0);
    }
    for (std::size_t j = 0; j < d; ++j) {
      double xi = min_matrix[i * d + j];
      double xn = min_matrix[nb * d + j];
      out.column(feature_cols[j]).num[new_row] = xi + lambda * (xn - xi);
    }
    out.set_n_rows(new_row + 1);
  }
  return out;
}

Table random_downsample(const Table& table, const std::string& target,
                        std::uint64_t seed) {
  ClassSplit cls = split_classes(table, target);
  if (cls.minority_rows.size() == cls.majority_rows.size()) return table;
  Rng rng = Rng::substream(seed, "downsample");
  auto pick = rng.sample_without_replacement(cls.majority_rows.size(),
                                             cls.minority_rows.size());
  std::vector<std::size_t> keep = cls.minority_rows;
  for (std::size_t p : pick) keep.push_back(cls.majority_rows[p]);
  std::sort(keep.begin(), keep.end());
  return table.select_rows(keep);
}

Table merge_on_key(const Table& left, const Table& right,
                   const std::string& key) {
  auto li = left.find_column(key);
  auto ri = right.find_column(key);
  if (!li || !ri)
    throw Error(ErrorCode::KeyMissing, "key '" + key + "' missing from " +
                                           (!li ? "left" : "right") + " table");

  auto key_of = [](const Column& col, std::size_t r) -> std::string {
    if (col.is_missing(r)) return "\x01";
    if (col.numeric) {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", col.num[r]);
      return buf;
    }
    return col.txt[r];
  };

  std::unordered_map<std::string, std::vector<std::size_t>> right_rows;
  for (std::size_t r = 0; r < right.n_rows(); ++r)
    right_rows[key_of(right.column(*ri), r)].push_back(r);

  Table out;
  std::vector<std::string> used_names;
  for (const auto& c : left.columns()) {
    Column nc;
    nc.name = c.name;
    nc.numeric = c.numeric;
    out.add_column(std::move(nc));
    used_names.push_back(c.name);
  }
  std::vector<std::size_t> right_cols;
  for (std::size_t c = 0; c < right.n_cols(); ++c) {
    if (c == *ri) continue;
    Column nc;
    nc.name = right.column(c).name;
    if (std::find(used_names.begin(), used_names.end(), nc.name) !=
        used_names.end())
      nc.name += "_y";
    nc.numeric = right.column(c).numeric;
    out.add_column(std::move(nc));
    right_cols.push_back(c);
  }
  out.set_n_rows(0);

  std::size_t n_out = 0;
  for (std::size_t lr = 0; lr < left.n_rows(); ++lr) {
    auto it = right_rows.find(key_of(left.column(*li), lr));
    if (it == right_rows.end()) continue;
    for (std::size_t rr : it->second) {
      for (std::size_t c = 0; c < left.n_cols(); ++c) {
        Column& dst = out.column(c);
        const Column& src = left.column(c);
        if (src.numeric)
          dst.num.push_back(src.is_missing(lr) ? 0.0 : src.num[lr]);
        else
          dst.txt.push_back(src.is_missing(lr) ? std::string() : src.txt[lr]);
        if (src.is_missing(lr)) dst.set_missing(n_out, n_out + 1);
        if (!dst.missing.empty()) dst.missing.resize(n_out + 1, 0);
      }
      for (std::size_t c = 0; c < right_cols.size(); ++c) {
        Column& dst = out.column(left.n_cols() + c);
        const Column& src = right.column(right_cols[c]);
        if (src.numeric)
          dst.num.push_back(src.is_missing(rr) ? 0.0 : src.num[rr]);
        else
          dst.txt.push_back(src.is_missing(rr) ? std::string() : src.txt[rr]);
        if (src.is_missing(rr)) dst.set_missing(n_out, n_out + 1);
        if (!dst.missing.empty()) dst.missing.resize(n_out + 1, 0);
      }
      ++n_out;
      out.set_n_rows(n_out);
    }
  }
  return out;
}

Table dedupe(const Table& table) {
  std::unordered_map<std::string, bool> seen;
  std::vector<std::size_t> keep;
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    std::string key = table.row_key(r);
    if (!seen.count(key)) {
      seen.emplace(std::move(key), true);
      keep.push_back(r);
    }
  }
  if (keep.size() == table.n_rows()) return table;
  return table.select_rows(keep);
}

Table map_target_status(const Table& table, const std::string& status_column,
                        const std::string& target_name) {
  std::size_t si = table.require_column(status_column);
  const Column& status = table.column(si);
  Column target;
  target.name = target_name;
  target.numeric = true;
  target.num.resize(table.n_rows(), 0.0);
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    std::string sym;
    if (status.is_missing(r)) {
      throw Error(ErrorCode::UnknownStatusSymbol, "missing STATUS cell");
    } else if (status.numeric) {
      double v = status.num[r];
      if (v != std::floor(v))
        throw Error(ErrorCode::UnknownStatusSymbol, "non-integer STATUS");
      sym = std::to_string(static_cast<long long>(v));
    } else {
      sym = status.txt[r];
    }
    if (sym == "0" || sym == "1" || sym == "C" || sym == "X") {
      target.num[r] = 0.0;
    } else if (sym == "2" || sym == "3" || sym == "4" || sym == "5") {
      target.num[r] = 1.0;
    } else {
      throw Error(ErrorCode::UnknownStatusSymbol, "STATUS value '" + sym + "'");
    }
  }
  Table out;
  for (std::size_t c = 0; c < table.n_cols(); ++c) {
    if (c == si)
      out.add_column(target);
    else
      out.add_column(table.column(c));
  }
  out.set_n_rows(table.n_rows());
  return out;
}

}  // namespace crewml::tab
