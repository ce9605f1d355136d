#pragma once

// Numerical missingness summaries: single numbers, per-variable and
// per-case summaries and tabulations, runs, spans, and grouped variants.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nabular/table.hpp"

namespace nabular {

// ---------------------------------------------------------------- counts

struct MissCount {
  std::size_t n_miss = 0;
  std::size_t n_complete = 0;
};

inline MissCount count_missing(const Column& column) {
  MissCount c;
  c.n_miss = column.n_miss();
  c.n_complete = column.size() - c.n_miss;
  return c;
}

inline MissCount count_missing(const Table& table) {
  MissCount c;
  c.n_miss = table.n_miss();
  c.n_complete = table.n_rows() * table.n_cols() - c.n_miss;
  return c;
}

// Rounding used for presentation: half away from zero at `digits` decimals.
inline double round_half_away(double x, int digits) {
  const double scale = std::pow(10.0, digits);
  return (x < 0 ? -1.0 : 1.0) * std::floor(std::abs(x) * scale + 0.5) / scale;
}

enum class MissUnit { Cell, Case, Var };
enum class RateForm { Proportion, Percent };

namespace detail {

inline std::size_t row_n_miss(const Table& t, std::size_t row) {
  std::size_t n = 0;
  for (std::size_t c = 0; c < t.n_cols(); ++c)
    if (t.at(row, c).is_missing()) ++n;
  return n;
}

}  // namespace detail

// Share of missing cells, of cases with >=1 missing, or of variables with
// >=1 missing; complement flips to 1-x (or 100-x).
inline double rate_missing(const Table& table, MissUnit unit,
                           RateForm form = RateForm::Proportion,
                           bool complement = false) {
  if (table.n_rows() == 0 || table.n_cols() == 0)
    throw empty_domain_error("rate_missing on empty table");
  double prop = 0;
  switch (unit) {
    case MissUnit::Cell:
      prop = static_cast<double>(table.n_miss()) /
             static_cast<double>(table.n_rows() * table.n_cols());
      break;
    case MissUnit::Case: {
      std::size_t n = 0;
      for (std::size_t r = 0; r < table.n_rows(); ++r)
        if (detail::row_n_miss(table, r) > 0) ++n;
      prop = static_cast<double>(n) / static_cast<double>(table.n_rows());
      break;
    }
    case MissUnit::Var: {
      std::size_t n = 0;
      for (const auto& c : table.columns())
        if (c.n_miss() > 0) ++n;
      prop = static_cast<double>(n) / static_cast<double>(table.n_cols());
      break;
    }
  }
  if (complement) prop = 1.0 - prop;
  return form == RateForm::Percent ? 100.0 * prop : prop;
}

// ---------------------------------------------------------------- summaries

struct VarSummaryRow {
  std::vector<Cell> group;  // empty for ungrouped input
  std::string variable;
  std::size_t n_miss = 0;
  double pct_miss = 0;  // full precision; presentation rounds

  friend bool operator==(const VarSummaryRow&, const VarSummaryRow&) = default;
};

struct CaseSummaryRow {
  std::size_t case_index = 0;
  std::size_t n_miss = 0;
  double pct_miss = 0;

  friend bool operator==(const CaseSummaryRow&,
                         const CaseSummaryRow&) = default;
};

struct TabulationRow {
  std::size_t n_miss_in_unit = 0;
  std::size_t n_units = 0;
  double pct_units = 0;

  friend bool operator==(const TabulationRow&, const TabulationRow&) = default;
};

inline std::vector<VarSummaryRow> miss_var_summary(const Table& table) {
  std::vector<VarSummaryRow> rows;
  for (const auto& c : table.columns()) {
    const std::size_t nm = c.n_miss();
    const double pct = table.n_rows() == 0
                           ? 0.0
                           : 100.0 * static_cast<double>(nm) /
                                 static_cast<double>(table.n_rows());
    rows.push_back({{}, c.name, nm, pct});
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return a.n_miss > b.n_miss; });
  return rows;
}

// Grouped form: one block per group, key columns excluded from the
// summarized variables, rows sorted by n_miss within each group.
inline std::vector<VarSummaryRow> miss_var_summary(const GroupedTable& grouped) {
  std::vector<VarSummaryRow> out;
  for (const auto& g : grouped.groups) {
    std::vector<VarSummaryRow> rows;
    for (const auto& c : grouped.base.columns()) {
      if (std::find(grouped.keys.begin(), grouped.keys.end(), c.name) !=
          grouped.keys.end())
        continue;
      std::size_t nm = 0;
      for (auto r : g.rows)
        if (c.cells[r].is_missing()) ++nm;
      const double pct = g.rows.empty()
                             ? 0.0
                             : 100.0 * static_cast<double>(nm) /
                                   static_cast<double>(g.rows.size());
      rows.push_back({g.key, c.name, nm, pct});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
      return a.n_miss > b.n_miss;
    });
    out.insert(out.end(), rows.begin(), rows.end());
  }
  return out;
}

inline std::vector<CaseSummaryRow> miss_case_summary(const Table& table) {
  std::vector<CaseSummaryRow> rows;
  rows.reserve(table.n_rows());
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    const std::size_t nm = detail::row_n_miss(table, r);
    const double pct = table.n_cols() == 0
                           ? 0.0
                           : 100.0 * static_cast<double>(nm) /
                                 static_cast<double>(table.n_cols());
    rows.push_back({r, nm, pct});
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return a.n_miss > b.n_miss; });
  return rows;
}

namespace detail {

inline std::vector<TabulationRow> tabulate(const std::vector<std::size_t>& unit_counts) {
  std::map<std::size_t, std::size_t> freq;
  for (auto n : unit_counts) ++freq[n];
  std::vector<TabulationRow> rows;
  const double total = static_cast<double>(unit_counts.size());
  for (const auto& [nm, count] : freq)
    rows.push_back({nm, count, total == 0 ? 0.0 : 100.0 * count / total});
  return rows;  // map iteration: ascending by n_miss_in_unit
}

}  // namespace detail

inline std::vector<TabulationRow> miss_var_table(const Table& table) {
  std::vector<std::size_t> counts;
  for (const auto& c : table.columns()) counts.push_back(c.n_miss());
  return detail::tabulate(counts);
}

inline std::vector<TabulationRow> miss_case_table(const Table& table) {
  std::vector<std::size_t> counts;
  for (std::size_t r = 0; r < table.n_rows(); ++r)
    counts.push_back(detail::row_n_miss(table, r));
  return detail::tabulate(counts);
}

// ---------------------------------------------------------------- runs

struct RunRow {
  std::size_t run_length = 0;
  bool is_missing = false;

  friend bool operator==(const RunRow&, const RunRow&) = default;
};

// Maximal alternating missing/complete stretches in row order.
inline std::vector<RunRow> miss_var_run(const Table& table,
                                        const std::string& var) {
  const auto& col = table.column(var);
  std::vector<RunRow> runs;
  for (const auto& cell : col.cells) {
    const bool m = cell.is_missing();
    if (!runs.empty() && runs.back().is_missing == m)
      ++runs.back().run_length;
    else
      runs.push_back({1, m});
  }
  return runs;
}

// ---------------------------------------------------------------- spans

struct SpanRow {
  std::size_t span_counter = 0;
  std::size_t n_miss = 0;
  std::size_t n_complete = 0;
  std::size_t span_size = 0;

  friend bool operator==(const SpanRow&, const SpanRow&) = default;
};

// Fixed-width consecutive blocks; the final block may be short and is
// still reported.
inline std::vector<SpanRow> miss_var_span(const Table& table,
                                          const std::string& var,
                                          std::size_t span_size) {
  if (span_size == 0) throw validation_error("span_size must be >= 1");
  const auto& col = table.column(var);
  std::vector<SpanRow> spans;
  for (std::size_t start = 0; start < col.size(); start += span_size) {
    SpanRow row;
    row.span_counter = spans.size() + 1;
    row.span_size = std::min(span_size, col.size() - start);
    for (std::size_t i = start; i < start + row.span_size; ++i) {
      if (col.cells[i].is_missing())
        ++row.n_miss;
      else
        ++row.n_complete;
    }
    spans.push_back(row);
  }
  return spans;
}

}  // namespace nabular
