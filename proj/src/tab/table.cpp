#include "crewml/tab/table.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "crewml/util/error.hpp"
#include "crewml/util/text.hpp"

namespace crewml::tab {

std::optional<std::size_t> Table::find_column(const std::string& name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t Table::require_column(const std::string& name) const {
  auto idx = find_column(name);
  if (!idx) throw Error(ErrorCode::UnknownTarget, "no column named '" + name + "'");
  return *idx;
}

std::vector<std::string> Table::column_names() const {
  std::vector<std::string> names;
  names.reserve(columns_.size());
  for (const auto& c : columns_) names.push_back(c.name);
  return names;
}

void Table::add_column(Column column) {
  if (!columns_.empty() || n_rows_ > 0) {
    std::size_t len = column.numeric ? column.num.size() : column.txt.size();
    if (columns_.empty()) {
      n_rows_ = len;
    } else if (len != n_rows_) {
      throw Error(ErrorCode::RaggedRow, "column '" + column.name +
                                            "' length mismatch");
    }
  } else {
    n_rows_ = column.numeric ? column.num.size() : column.txt.size();
  }
  for (const auto& c : columns_) {
    if (c.name == column.name)
      throw Error(ErrorCode::BadValue, "duplicate column '" + column.name + "'");
  }
  columns_.push_back(std::move(column));
}

Table Table::select_rows(const std::vector<std::size_t>& rows) const {
  Table out;
  for (const auto& c : columns_) {
    Column nc;
    nc.name = c.name;
    nc.numeric = c.numeric;
    if (c.numeric)
      nc.num.reserve(rows.size());
    else
      nc.txt.reserve(rows.size());
    bool any_missing = false;
    for (std::size_t r : rows) {
      if (c.numeric)
        nc.num.push_back(c.num[r]);
      else
        nc.txt.push_back(c.txt[r]);
      if (c.is_missing(r)) any_missing = true;
    }
    if (any_missing) {
      nc.missing.assign(rows.size(), 0);
      for (std::size_t i = 0; i < rows.size(); ++i)
        nc.missing[i] = c.is_missing(rows[i]) ? 1 : 0;
    }
    out.add_column(std::move(nc));
  }
  out.n_rows_ = rows.size();
  return out;
}

Table Table::drop_columns(const std::vector<std::string>& names) const {
  Table out;
  for (const auto& c : columns_) {
    bool drop = false;
    for (const auto& n : names)
      if (c.name == n) drop = true;
    if (!drop) out.add_column(c);
  }
  out.n_rows_ = n_rows_;
  return out;
}

std::string Table::row_key(std::size_t row) const {
  std::string key;
  for (const auto& c : columns_) {
    if (c.is_missing(row)) {
      key += "\x01";
    } else if (c.numeric) {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", c.num[row]);
      key += buf;
    } else {
      key += c.txt[row];
    }
    key += "\x1f";
  }
  return key;
}

void Table::append_row(const Table& src, std::size_t row) {
  if (src.n_cols() != n_cols())
    throw Error(ErrorCode::ArityMismatch, "append_row column count mismatch");
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    Column& dst = columns_[i];
    const Column& s = src.columns_[i];
    if (dst.numeric != s.numeric)
      throw Error(ErrorCode::ArityMismatch, "append_row column type mismatch");
    if (dst.numeric)
      dst.num.push_back(s.is_missing(row) ? 0.0 : s.num[row]);
    else
      dst.txt.push_back(s.is_missing(row) ? std::string() : s.txt[row]);
    if (s.is_missing(row)) dst.set_missing(n_rows_, n_rows_ + 1);
    if (!dst.missing.empty() && dst.missing.size() < n_rows_ + 1)
      dst.missing.resize(n_rows_ + 1, 0);
  }
  ++n_rows_;
}

namespace {

// split one CSV record, honoring quoted fields; returns false at end of input
bool next_record(const std::string& s, std::size_t& pos,
                 std::vector<std::string>& fields) {
  fields.clear();
  if (pos >= s.size()) return false;
  std::string cur;
  bool quoted = false;
  bool any = false;
  while (pos < s.size()) {
    char c = s[pos];
    if (quoted) {
      if (c == '"') {
        if (pos + 1 < s.size() && s[pos + 1] == '"') {
          cur.push_back('"');
          ++pos;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && pos + 1 < s.size() && s[pos + 1] == '\n') ++pos;
      ++pos;
      if (!any && cur.empty()) {
        // blank line: skip it and continue with the next record
        if (pos >= s.size()) return false;
        continue;
      }
      fields.push_back(std::move(cur));
      return true;
    } else {
      cur.push_back(c);
      any = true;
    }
    ++pos;
  }
  if (any || !cur.empty()) {
    fields.push_back(std::move(cur));
    return true;
  }
  return false;
}

bool parse_number(const std::string& s, double& out) {
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end > begin && (*(end - 1) == ' ' || *(end - 1) == '\t')) --end;
  if (begin == end) return false;
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

Table parse_csv(const std::string& content, const std::string& origin) {
  std::size_t pos = 0;
  std::vector<std::string> header;
  if (!next_record(content, pos, header) || header.empty())
    throw Error(ErrorCode::EmptyFile, origin + " has no header row");

  std::size_t n_cols = header.size();
  std::vector<std::vector<std::string>> cells(n_cols);
  std::vector<std::string> fields;
  std::size_t line_no = 1;
  while (next_record(content, pos, fields)) {
    ++line_no;
    if (fields.size() != n_cols)
      throw Error(ErrorCode::RaggedRow,
                  origin + " line " + std::to_string(line_no) + " has " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(n_cols));
    for (std::size_t c = 0; c < n_cols; ++c) cells[c].push_back(std::move(fields[c]));
  }

  std::size_t n_rows = cells.empty() ? 0 : cells[0].size();
  Table table;
  for (std::size_t c = 0; c < n_cols; ++c) {
    Column col;
    col.name = trim(header[c]);
    bool all_numeric = true;
    std::vector<double> nums(n_rows, 0.0);
    std::vector<std::uint8_t> miss(n_rows, 0);
    bool any_missing = false;
    for (std::size_t r = 0; r < n_rows; ++r) {
      const std::string& cell = cells[c][r];
      if (trim(cell).empty()) {
        miss[r] = 1;
        any_missing = true;
        continue;
      }
      double v;
      if (!parse_number(cell, v)) {
        all_numeric = false;
        break;
      }
      nums[r] = v;
    }
    col.numeric = all_numeric;
    if (all_numeric) {
      col.num = std::move(nums);
    } else {
      col.txt.resize(n_rows);
      miss.assign(n_rows, 0);
      any_missing = false;
      for (std::size_t r = 0; r < n_rows; ++r) {
        std::string cell = trim(cells[c][r]);
        if (cell.empty()) {
          miss[r] = 1;
          any_missing = true;
        } else {
          col.txt[r] = std::move(cell);
        }
      }
    }
    if (any_missing) col.missing = std::move(miss);
    table.add_column(std::move(col));
  }
  table.set_n_rows(n_rows);
  return table;
}

Table load_csv(const std::string& path) {
  if (!std::filesystem::exists(path))
    throw Error(ErrorCode::FileMissing, path);
  std::string content = read_text_file(path);
  if (trim(content).empty()) throw Error(ErrorCode::EmptyFile, path);
  return parse_csv(content, path);
}

namespace {

std::string csv_escape(const std::string& s) {
  bool needs_quote = s.find_first_of(",\"\n\r") != std::string::npos;
  if (!needs_quote) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

std::string format_cell(double v) {
  // integral values render without an exponent or trailing zeros
  if (v == static_cast<double>(static_cast<long long>(v)) &&
      std::abs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
    return buf;
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string render_csv(const Table& table) {
  std::ostringstream out;
  const auto& cols = table.columns();
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (c) out << ',';
    out << csv_escape(cols[c].name);
  }
  out << '\n';
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (c) out << ',';
      const Column& col = cols[c];
      if (col.is_missing(r)) continue;
      if (col.numeric)
        out << format_cell(col.num[r]);
      else
        out << csv_escape(col.txt[r]);
    }
    out << '\n';
  }
  return out.str();
}

void write_csv(const Table& table, const std::string& path) {
  write_text_file(path, render_csv(table));
}

}  // namespace crewml::tab
