#pragma once

// NA-aware columnar table: typed columns whose cells are either a value or
// missing, plus delimited-text ingestion, grouping, and observed-value stats.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace nabular {

// ---------------------------------------------------------------- errors

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct parse_error : error { using error::error; };
struct schema_error : error { using error::error; };
struct name_error : error { using error::error; };
struct type_error : error { using error::error; };
struct empty_domain_error : error { using error::error; };
struct validation_error : error { using error::error; };
struct singularity_error : error { using error::error; };

// ---------------------------------------------------------------- cells

enum class Dtype { Numeric, Integer, Text, Boolean };

inline std::string_view dtype_name(Dtype d) {
  switch (d) {
    case Dtype::Numeric: return "numeric";
    case Dtype::Integer: return "integer";
    case Dtype::Text:    return "text";
    case Dtype::Boolean: return "boolean";
  }
  return "?";
}

using Value = std::variant<double, std::int64_t, std::string, bool>;

// A cell is missing or holds a payload matching its column dtype.
struct Cell {
  std::optional<Value> value;

  Cell() = default;
  explicit Cell(Value v) : value(std::move(v)) {}

  static Cell missing() { return Cell{}; }
  static Cell number(double v) { return Cell{Value{v}}; }
  static Cell integer(std::int64_t v) { return Cell{Value{v}}; }
  static Cell text(std::string v) { return Cell{Value{std::move(v)}}; }
  static Cell boolean(bool v) { return Cell{Value{v}}; }

  bool is_missing() const { return !value.has_value(); }

  // Numeric view of a Numeric or Integer payload.
  double as_number() const {
    if (!value) throw type_error("as_number on missing cell");
    if (const auto* d = std::get_if<double>(&*value)) return *d;
    if (const auto* i = std::get_if<std::int64_t>(&*value))
      return static_cast<double>(*i);
    throw type_error("cell payload is not numeric");
  }
  const std::string& as_text() const {
    if (!value || !std::holds_alternative<std::string>(*value))
      throw type_error("cell payload is not text");
    return std::get<std::string>(*value);
  }
  bool as_bool() const {
    if (!value || !std::holds_alternative<bool>(*value))
      throw type_error("cell payload is not boolean");
    return std::get<bool>(*value);
  }

  friend bool operator==(const Cell&, const Cell&) = default;
};

struct Column {
  std::string name;
  Dtype dtype = Dtype::Text;
  std::vector<Cell> cells;

  std::size_t size() const { return cells.size(); }
  bool is_numeric() const {
    return dtype == Dtype::Numeric || dtype == Dtype::Integer;
  }
  std::size_t n_miss() const {
    return static_cast<std::size_t>(std::count_if(
        cells.begin(), cells.end(), [](const Cell& c) { return c.is_missing(); }));
  }

  friend bool operator==(const Column&, const Column&) = default;
};

// ---------------------------------------------------------------- table

class Table {
 public:
  Table() = default;

  explicit Table(std::vector<Column> cols) : columns_(std::move(cols)) {
    validate();
  }

  const std::vector<Column>& columns() const { return columns_; }
  std::size_t n_cols() const { return columns_.size(); }
  std::size_t n_rows() const {
    return columns_.empty() ? 0 : columns_.front().size();
  }

  bool has_column(std::string_view name) const {
    return find_index(name).has_value();
  }
  std::size_t column_index(std::string_view name) const {
    if (auto i = find_index(name)) return *i;
    throw name_error("unknown column: " + std::string(name));
  }
  const Column& column(std::string_view name) const {
    return columns_[column_index(name)];
  }
  const Column& column(std::size_t i) const { return columns_.at(i); }

  const Cell& at(std::size_t row, std::size_t col) const {
    return columns_.at(col).cells.at(row);
  }

  std::size_t n_miss() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.n_miss();
    return n;
  }

  std::vector<std::string> column_names() const {
    std::vector<std::string> out;
    out.reserve(columns_.size());
    for (const auto& c : columns_) out.push_back(c.name);
    return out;
  }

  Table with_column(Column col) const {
    if (has_column(col.name))
      throw name_error("column already exists: " + col.name);
    if (!columns_.empty() && col.size() != n_rows())
      throw schema_error("column length mismatch: " + col.name);
    auto cols = columns_;
    cols.push_back(std::move(col));
    return Table(std::move(cols));
  }

  friend bool operator==(const Table&, const Table&) = default;

 private:
  std::optional<std::size_t> find_index(std::string_view name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i)
      if (columns_[i].name == name) return i;
    return std::nullopt;
  }

  void validate() const {
    for (const auto& c : columns_) {
      if (c.name.empty()) throw schema_error("empty column name");
      if (c.size() != n_rows())
        throw schema_error("ragged columns: " + c.name);
    }
    for (std::size_t i = 0; i < columns_.size(); ++i)
      for (std::size_t j = i + 1; j < columns_.size(); ++j)
        if (columns_[i].name == columns_[j].name)
          throw schema_error("duplicate column name: " + columns_[i].name);
  }

  std::vector<Column> columns_;
};

// ---------------------------------------------------------------- grouping

struct Group {
  std::vector<Cell> key;           // one cell per key column
  std::vector<std::size_t> rows;   // row indices, in source order
};

struct GroupedTable {
  Table base;
  std::vector<std::string> keys;
  std::vector<Group> groups;       // order of first appearance
};

// Partition rows by exact key-tuple equality. Missing keys group together.
inline GroupedTable group_by(const Table& table,
                             const std::vector<std::string>& keys) {
  std::vector<std::size_t> key_idx;
  key_idx.reserve(keys.size());
  for (const auto& k : keys) key_idx.push_back(table.column_index(k));

  GroupedTable out{table, keys, {}};
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    std::vector<Cell> key;
    key.reserve(key_idx.size());
    for (auto c : key_idx) key.push_back(table.at(r, c));
    auto it = std::find_if(out.groups.begin(), out.groups.end(),
                           [&](const Group& g) { return g.key == key; });
    if (it == out.groups.end()) {
      out.groups.push_back(Group{std::move(key), {r}});
    } else {
      it->rows.push_back(r);
    }
  }
  return out;
}

// ---------------------------------------------------------------- stats

struct StatsRow {
  double min = 0, mean = 0, median = 0, max = 0;
  std::size_t n_observed = 0;
};

namespace detail {

inline double median_of_sorted(const std::vector<double>& v) {
  const std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return (v[n / 2 - 1] + v[n / 2]) / 2.0;  // midpoint convention
}

}  // namespace detail

inline StatsRow observed_stats(const Column& column) {
  if (!column.is_numeric())
    throw type_error("observed_stats requires a numeric column, got " +
                     std::string(dtype_name(column.dtype)) + ": " + column.name);
  std::vector<double> vals;
  for (const auto& c : column.cells)
    if (!c.is_missing()) vals.push_back(c.as_number());
  if (vals.empty())
    throw empty_domain_error("observed_stats on all-missing column: " +
                             column.name);
  std::sort(vals.begin(), vals.end());
  StatsRow s;
  s.n_observed = vals.size();
  s.min = vals.front();
  s.max = vals.back();
  s.median = detail::median_of_sorted(vals);
  double sum = 0;
  for (double v : vals) sum += v;
  s.mean = sum / static_cast<double>(vals.size());
  return s;
}

}  // namespace nabular
