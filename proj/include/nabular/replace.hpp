#pragma once

// Scan for disguised missing-value codes (-99, "N/A", ...) and replace them
// with true Missing cells, scoped to all / named / dtype-matching columns.

#include <map>
#include <string>
#include <vector>

#include "nabular/shadow.hpp"
#include "nabular/table.hpp"

namespace nabular {

// ---------------------------------------------------------------- scope

struct Scope {
  enum class Kind { All, At, If };
  Kind kind = Kind::All;
  std::vector<std::string> names;  // At
  Dtype dtype = Dtype::Numeric;    // If

  static Scope all() { return Scope{Kind::All, {}, Dtype::Numeric}; }
  static Scope at(std::vector<std::string> names) {
    return Scope{Kind::At, std::move(names), Dtype::Numeric};
  }
  static Scope if_dtype(Dtype d) { return Scope{Kind::If, {}, d}; }
};

// Resolve a scope to concrete column names, preserving table order.
inline std::vector<std::string> resolve_scope(const Table& table,
                                              const Scope& scope) {
  switch (scope.kind) {
    case Scope::Kind::All:
      return table.column_names();
    case Scope::Kind::At:
      for (const auto& n : scope.names) table.column_index(n);  // name check
      return scope.names;
    case Scope::Kind::If: {
      std::vector<std::string> out;
      for (const auto& c : table.columns())
        if (c.dtype == scope.dtype) out.push_back(c.name);
      return out;
    }
  }
  return {};
}

// ---------------------------------------------------------------- scan

struct ScanRow {
  std::string variable;
  std::string value;  // rendered search value
  std::size_t count = 0;

  friend bool operator==(const ScanRow&, const ScanRow&) = default;
};

using ScanReport = std::vector<ScanRow>;

// Frozen lists of conventional missing-value codes.
inline const std::vector<double>& common_na_numbers() {
  static const std::vector<double> values{-9, -99, -98, -999, -9999, 9999};
  return values;
}
inline const std::vector<std::string>& common_na_strings() {
  static const std::vector<std::string> values{
      "NA", "N A", "N/A", "NA ", " NA", "N /A", "N / A", "N / A ",
      "na", "n a", "n/a", "NULL", "null", "", "missing", "MISSING", "#N/A"};
  return values;
}

namespace detail {

inline bool cell_matches_value(const Cell& cell, const Cell& value) {
  return cells_equal_for_match(cell, value);
}

}  // namespace detail

// Count occurrences of each search value per column. Every column is
// reported, including zero counts; type-incompatible comparisons count 0.
inline ScanReport miss_scan_count(const Table& table,
                                  const std::vector<Cell>& values) {
  if (values.empty()) throw validation_error("miss_scan_count: no values");
  ScanReport report;
  NaTokenConfig render_cfg;
  for (const auto& col : table.columns()) {
    for (const auto& v : values) {
      std::size_t n = 0;
      for (const auto& cell : col.cells)
        if (detail::cell_matches_value(cell, v)) ++n;
      report.push_back({col.name, render_cell(v, render_cfg), n});
    }
  }
  return report;
}

// ---------------------------------------------------------------- replace

// Per-column lists of payload values to convert to Missing.
struct ReplaceSpec {
  std::vector<std::pair<std::string, std::vector<Cell>>> columns;
};

inline Table replace_with_na(const Table& table, const ReplaceSpec& spec) {
  std::vector<Column> cols = table.columns();
  for (const auto& [name, values] : spec.columns) {
    auto& col = cols[table.column_index(name)];
    for (auto& cell : col.cells)
      for (const auto& v : values)
        if (detail::cell_matches_value(cell, v)) {
          cell = Cell::missing();
          break;
        }
  }
  return Table(std::move(cols));
}

inline Table replace_with_na_scoped(const Table& table, const Scope& scope,
                                    const std::vector<Cell>& values) {
  ReplaceSpec spec;
  for (const auto& name : resolve_scope(table, scope))
    spec.columns.emplace_back(name, values);
  return replace_with_na(table, spec);
}

}  // namespace nabular
