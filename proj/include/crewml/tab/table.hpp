#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace crewml::tab {

// Column-oriented table. A column is either numeric (doubles) or text;
// per-cell missing flags are kept alongside. Tables are immutable by
// convention: every transform returns a new table.
struct Column {
  std::string name;
  bool numeric = true;
  std::vector<double> num;
  std::vector<std::string> txt;
  std::vector<std::uint8_t> missing;  // empty means "no missing cells"

  bool is_missing(std::size_t row) const {
    return !missing.empty() && missing[row] != 0;
  }
  void set_missing(std::size_t row, std::size_t n_rows) {
    if (missing.empty()) missing.assign(n_rows, 0);
    missing[row] = 1;
  }
  std::size_t missing_count() const {
    std::size_t n = 0;
    for (auto m : missing) n += m;
    return n;
  }
};

class Table {
 public:
  Table() = default;

  std::size_t n_rows() const { return n_rows_; }
  std::size_t n_cols() const { return columns_.size(); }

  const std::vector<Column>& columns() const { return columns_; }
  const Column& column(std::size_t i) const { return columns_[i]; }
  Column& column(std::size_t i) { return columns_[i]; }

  /// Index of the named column, or nullopt.
  std::optional<std::size_t> find_column(const std::string& name) const;
  /// Index of the named column; throws UnknownTarget when absent.
  std::size_t require_column(const std::string& name) const;

  std::vector<std::string> column_names() const;

  void add_column(Column column);
  void set_n_rows(std::size_t n) { n_rows_ = n; }

  /// New table containing the given rows (in the given order).
  Table select_rows(const std::vector<std::size_t>& rows) const;
  /// New table without the named columns (missing names ignored).
  Table drop_columns(const std::vector<std::string>& names) const;

  /// Renders one row as a canonical key (for dedupe / multiset checks).
  std::string row_key(std::size_t row) const;

  /// Append one row from another table with identical column layout.
  void append_row(const Table& src, std::size_t row);

 private:
  std::vector<Column> columns_;
  std::size_t n_rows_ = 0;
};

/// RFC-4180-style CSV with a required header row; empty field = missing.
Table load_csv(const std::string& path);
Table parse_csv(const std::string& content, const std::string& origin);
void write_csv(const Table& table, const std::string& path);
std::string render_csv(const Table& table);

}  // namespace crewml::tab
