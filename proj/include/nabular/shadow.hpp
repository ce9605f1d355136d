#pragma once

// Shadow matrices and nabular tables: per-variable missingness levels
// ("!NA" / "NA" / "NA_<suffix>") column-bound to the data they describe.

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "nabular/csv.hpp"
#include "nabular/table.hpp"

namespace nabular {

// ---------------------------------------------------------------- levels

struct ShadowLevel {
  enum class Kind { NotMissing, Missing, Special };
  Kind kind = Kind::NotMissing;
  std::string suffix;  // Special only; matches [a-z0-9_]+

  static ShadowLevel not_missing() { return {Kind::NotMissing, ""}; }
  static ShadowLevel missing() { return {Kind::Missing, ""}; }
  static ShadowLevel special(std::string suffix) {
    return {Kind::Special, std::move(suffix)};
  }

  bool is_missing() const { return kind != Kind::NotMissing; }

  std::string render() const {
    switch (kind) {
      case Kind::NotMissing: return "!NA";
      case Kind::Missing: return "NA";
      case Kind::Special: return "NA_" + suffix;
    }
    return "?";
  }

  static ShadowLevel parse(std::string_view label) {
    if (label == "!NA") return not_missing();
    if (label == "NA") return missing();
    if (label.size() > 3 && label.substr(0, 3) == "NA_")
      return special(std::string(label.substr(3)));
    throw validation_error("not a shadow level label: " + std::string(label));
  }

  friend bool operator==(const ShadowLevel&, const ShadowLevel&) = default;
};

inline bool valid_suffix(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

// Ordered set of levels known to one nabular table; !NA and NA come first
// and every shadow column shares the same registry.
struct LevelRegistry {
  std::vector<ShadowLevel> levels{ShadowLevel::not_missing(),
                                  ShadowLevel::missing()};

  bool contains(const ShadowLevel& l) const {
    return std::find(levels.begin(), levels.end(), l) != levels.end();
  }
  void add(const ShadowLevel& l) {
    if (!contains(l)) levels.push_back(l);
  }

  friend bool operator==(const LevelRegistry&, const LevelRegistry&) = default;
};

// ---------------------------------------------------------------- shadow

struct ShadowColumn {
  std::string name;  // data name + "_NA"
  std::vector<ShadowLevel> levels;

  friend bool operator==(const ShadowColumn&, const ShadowColumn&) = default;
};

struct ShadowMatrix {
  std::vector<ShadowColumn> columns;

  std::size_t n_cols() const { return columns.size(); }
  std::size_t n_rows() const {
    return columns.empty() ? 0 : columns.front().levels.size();
  }

  std::size_t column_index(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i].name == name) return i;
    throw name_error("unknown shadow column: " + std::string(name));
  }

  std::size_t n_shadow_missing() const {
    std::size_t n = 0;
    for (const auto& c : columns)
      for (const auto& l : c.levels)
        if (l.is_missing()) ++n;
    return n;
  }

  friend bool operator==(const ShadowMatrix&, const ShadowMatrix&) = default;
};

inline std::string shadow_name(const std::string& var) { return var + "_NA"; }

inline ShadowMatrix as_shadow(const Table& table) {
  for (const auto& c : table.columns())
    if (c.name.size() >= 3 && c.name.ends_with("_NA"))
      throw name_error("column name collides with shadow suffix: " + c.name);
  ShadowMatrix out;
  out.columns.reserve(table.n_cols());
  for (const auto& c : table.columns()) {
    ShadowColumn sc{shadow_name(c.name), {}};
    sc.levels.reserve(c.size());
    for (const auto& cell : c.cells)
      sc.levels.push_back(cell.is_missing() ? ShadowLevel::missing()
                                            : ShadowLevel::not_missing());
    out.columns.push_back(std::move(sc));
  }
  return out;
}

// ---------------------------------------------------------------- nabular

struct NabularTable {
  Table data;
  ShadowMatrix shadow;
  LevelRegistry registry;

  std::size_t n_rows() const { return data.n_rows(); }
  std::size_t n_cols() const { return data.n_cols() + shadow.n_cols(); }

  // Row-level flag used for labels and imputation summaries.
  bool row_has_shadow_missing(std::size_t row) const {
    for (const auto& c : shadow.columns)
      if (c.levels[row].is_missing()) return true;
    return false;
  }

  friend bool operator==(const NabularTable&, const NabularTable&) = default;
};

inline NabularTable as_nabular(const Table& table) {
  return NabularTable{table, as_shadow(table), LevelRegistry{}};
}

// ---------------------------------------------------------------- where

struct WherePredicate {
  enum class Op { Eq, Ne, Lt, Le, Gt, Ge, IsMissing };
  std::string column;
  Op op = Op::Eq;
  Cell constant;  // ignored for IsMissing
};

// Conjunction of per-row predicates. A value comparison against a Missing
// cell is false; only IsMissing matches a missing cell.
struct WhereClause {
  std::vector<WherePredicate> predicates;

  static WhereClause single(std::string column, WherePredicate::Op op,
                            Cell constant = Cell::missing()) {
    return WhereClause{{WherePredicate{std::move(column), op,
                                       std::move(constant)}}};
  }
};

namespace detail {

inline bool cells_equal_for_match(const Cell& a, const Cell& b) {
  // numeric payloads compare numerically so Integer columns match a
  // numeric constant (and vice versa)
  if (a.is_missing() || b.is_missing()) return false;
  const bool a_num = std::holds_alternative<double>(*a.value) ||
                     std::holds_alternative<std::int64_t>(*a.value);
  const bool b_num = std::holds_alternative<double>(*b.value) ||
                     std::holds_alternative<std::int64_t>(*b.value);
  if (a_num && b_num) return a.as_number() == b.as_number();
  return *a.value == *b.value;
}

inline bool eval_predicate(const WherePredicate& p, const Cell& cell) {
  using Op = WherePredicate::Op;
  if (p.op == Op::IsMissing) return cell.is_missing();
  if (cell.is_missing()) return false;
  switch (p.op) {
    case Op::Eq: return cells_equal_for_match(cell, p.constant);
    case Op::Ne: return !cells_equal_for_match(cell, p.constant);
    default: break;
  }
  // ordered comparisons require numeric payloads on both sides
  double lhs, rhs;
  try {
    lhs = cell.as_number();
    rhs = p.constant.as_number();
  } catch (const type_error&) {
    return false;
  }
  switch (p.op) {
    case Op::Lt: return lhs < rhs;
    case Op::Le: return lhs <= rhs;
    case Op::Gt: return lhs > rhs;
    case Op::Ge: return lhs >= rhs;
    default: return false;
  }
}

}  // namespace detail

inline bool eval_where(const WhereClause& where, const Table& table,
                       std::size_t row) {
  for (const auto& p : where.predicates) {
    const auto& col = table.column(p.column);
    if (!detail::eval_predicate(p, col.cells[row])) return false;
  }
  return true;
}

// Flag rows matching `where` with the special level NA_<suffix> in var's
// shadow column. Data values are not altered; the new level is registered
// so every column knows about it.
inline NabularTable recode_shadow(const NabularTable& nab,
                                  const std::string& var,
                                  const WhereClause& where,
                                  const std::string& suffix) {
  if (!valid_suffix(suffix))
    throw validation_error("invalid shadow suffix: " + suffix);
  nab.data.column_index(var);  // name check
  NabularTable out = nab;
  out.registry.add(ShadowLevel::special(suffix));
  auto& levels = out.shadow.columns[out.shadow.column_index(shadow_name(var))]
                     .levels;
  for (std::size_t r = 0; r < nab.n_rows(); ++r)
    if (eval_where(where, nab.data, r))
      levels[r] = ShadowLevel::special(suffix);
  return out;
}

// ---------------------------------------------------------------- long form

struct LongShadowRow {
  std::size_t case_index;
  std::string variable;
  ShadowLevel level;

  friend bool operator==(const LongShadowRow&, const LongShadowRow&) = default;
};

// Variable-major, then case: stable order for summary plots.
inline std::vector<LongShadowRow> shadow_long(const ShadowMatrix& shadow) {
  std::vector<LongShadowRow> out;
  out.reserve(shadow.n_rows() * shadow.n_cols());
  for (const auto& col : shadow.columns)
    for (std::size_t r = 0; r < col.levels.size(); ++r)
      out.push_back({r, col.name, col.levels[r]});
  return out;
}

// ---------------------------------------------------------------- serialize

// Nabular data as one flat table: data columns followed by shadow columns
// holding the rendered level labels.
inline Table nabular_to_table(const NabularTable& nab) {
  std::vector<Column> cols = nab.data.columns();
  for (const auto& sc : nab.shadow.columns) {
    Column c{sc.name, Dtype::Text, {}};
    c.cells.reserve(sc.levels.size());
    for (const auto& l : sc.levels) c.cells.push_back(Cell::text(l.render()));
    cols.push_back(std::move(c));
  }
  return Table(std::move(cols));
}

// Inverse of nabular_to_table for round-tripping through delimited text.
// A Missing cell in a shadow column reads back as the NA level (the "NA"
// label is itself an NA token on ingest).
inline NabularTable nabular_from_table(const Table& flat) {
  const std::size_t total = flat.n_cols();
  if (total == 0 || total % 2 != 0)
    throw schema_error("not a nabular layout: need data + shadow halves");
  const std::size_t half = total / 2;
  std::vector<Column> data_cols(flat.columns().begin(),
                                flat.columns().begin() + half);
  NabularTable out;
  out.data = Table(std::move(data_cols));
  for (std::size_t i = 0; i < half; ++i) {
    const auto& col = flat.column(half + i);
    if (col.name != shadow_name(flat.column(i).name))
      throw schema_error("shadow column name mismatch: " + col.name);
    ShadowColumn sc{col.name, {}};
    sc.levels.reserve(col.size());
    for (const auto& cell : col.cells) {
      ShadowLevel l = cell.is_missing() ? ShadowLevel::missing()
                                        : ShadowLevel::parse(cell.as_text());
      out.registry.add(l);
      sc.levels.push_back(l);
    }
    out.shadow.columns.push_back(std::move(sc));
  }
  return out;
}

inline bool looks_nabular(const Table& flat) {
  const std::size_t total = flat.n_cols();
  if (total == 0 || total % 2 != 0) return false;
  const std::size_t half = total / 2;
  for (std::size_t i = 0; i < half; ++i)
    if (flat.column(half + i).name != shadow_name(flat.column(i).name))
      return false;
  return true;
}

// Synchrony between data and shadow: shadow is missing exactly where the
// data cell is Missing. Special levels on Present cells (an unreplaced
// sentinel that was flagged) relax the reverse direction.
inline bool shadow_in_sync(const NabularTable& nab,
                           bool allow_special_on_present = true) {
  if (nab.shadow.n_cols() != nab.data.n_cols() ||
      nab.shadow.n_rows() != nab.data.n_rows())
    return false;
  for (std::size_t c = 0; c < nab.data.n_cols(); ++c) {
    for (std::size_t r = 0; r < nab.data.n_rows(); ++r) {
      const bool data_miss = nab.data.at(r, c).is_missing();
      const auto& level = nab.shadow.columns[c].levels[r];
      if (data_miss && !level.is_missing()) return false;
      if (!data_miss && level.is_missing()) {
        if (!(allow_special_on_present &&
              level.kind == ShadowLevel::Kind::Special))
          return false;
      }
    }
  }
  return true;
}

}  // namespace nabular
