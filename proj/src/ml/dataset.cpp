#include "crewml/ml/dataset.hpp"

#include "crewml/util/error.hpp"

namespace crewml::ml {

Dataset dataset_from_table(const tab::Table& table, const std::string& target) {
  std::size_t t = table.require_column(target);
  Dataset ds;
  ds.n_rows = table.n_rows();
  for (std::size_t c = 0; c < table.n_cols(); ++c) {
    if (c == t) continue;
    const tab::Column& col = table.column(c);
    if (!col.numeric)
      throw Error(ErrorCode::BadValue,
                  "feature '" + col.name + "' is not numeric; encode it first");
    if (col.missing_count() > 0)
      throw Error(ErrorCode::MissingValuesPresent,
                  "feature '" + col.name + "' has missing cells");
    ds.feature_names.push_back(col.name);
  }
  ds.n_cols = ds.feature_names.size();
  ds.x.resize(ds.n_rows * ds.n_cols);
  std::size_t j = 0;
  for (std::size_t c = 0; c < table.n_cols(); ++c) {
    if (c == t) continue;
    const tab::Column& col = table.column(c);
    for (std::size_t r = 0; r < ds.n_rows; ++r) ds.x[r * ds.n_cols + j] = col.num[r];
    ++j;
  }
  const tab::Column& tc = table.column(t);
  if (!tc.numeric)
    throw Error(ErrorCode::NonBinaryTarget, "target must be numeric");
  if (tc.missing_count() > 0)
    throw Error(ErrorCode::MissingValuesPresent, "target has missing cells");
  ds.y = tc.num;
  return ds;
}

}  // namespace crewml::ml
