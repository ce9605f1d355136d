#pragma once

// Plot-data builders for the five graphic families. Payloads are
// first-class serializable values; rendering lives in render.hpp.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nabular/augment.hpp"
#include "nabular/impute.hpp"
#include "nabular/shadow.hpp"
#include "nabular/summary.hpp"
#include "nabular/table.hpp"

namespace nabular {

// ---------------------------------------------------------------- payloads

struct BarData {
  std::string title;
  std::string value_axis;
  std::vector<std::pair<std::string, double>> bars;  // descending by value
};

struct HeatmapData {
  std::vector<std::size_t> row_order;    // permutation of case indices
  std::vector<std::string> column_order; // permutation of variable names
  std::vector<std::size_t> column_source;  // source index per ordered column
  std::vector<std::vector<bool>> missing;  // source-order grid [row][col]
  std::vector<double> column_pct_miss;     // aligned with column_order
  double overall_pct_miss = 0;

  std::size_t source_column(std::size_t ordered) const {
    return column_source[ordered];
  }
};

struct UpsetPattern {
  std::vector<std::string> variables;  // sorted variable subset
  std::size_t count = 0;

  friend bool operator==(const UpsetPattern&, const UpsetPattern&) = default;
};

struct UpsetData {
  std::vector<UpsetPattern> patterns;
  std::vector<std::pair<std::string, std::size_t>> variable_totals;
};

struct SplitHistogramSeries {
  std::string label;  // rendered shadow level
  std::vector<std::size_t> counts;
};

struct SplitHistogramData {
  std::string plot_var;
  std::string condition_var;
  std::vector<double> edges;  // strictly increasing, bins + 1 entries
  std::vector<SplitHistogramSeries> series;
  bool density = false;
};

struct ScatterPoint {
  double x = 0, y = 0;
  enum class Label { Observed, ImputedX, ImputedY, ImputedBoth } label =
      Label::Observed;
};

struct ScatterMissData {
  std::string x_var, y_var;
  double shift_fraction = 0.1;
  std::vector<ScatterPoint> points;  // one per input row
};

struct ParallelCoordsSeries {
  std::string variable;
  std::vector<std::optional<double>> values;  // scaled to [0,1]; below-range
                                              // imputations may be < 0
};

struct ParallelCoordsData {
  std::vector<ParallelCoordsSeries> series;
  std::string color_shadow_var;
  std::vector<std::string> case_labels;  // rendered shadow level per case
};

// ---------------------------------------------------------------- builders

inline BarData miss_overview_bars(const Table& table, MissUnit unit) {
  BarData out;
  if (unit == MissUnit::Var) {
    out.title = "missings per variable";
    out.value_axis = "n_miss";
    for (const auto& row : miss_var_summary(table))
      out.bars.emplace_back(row.variable, static_cast<double>(row.n_miss));
  } else if (unit == MissUnit::Case) {
    out.title = "missings per case";
    out.value_axis = "n_miss";
    for (const auto& row : miss_case_summary(table))
      out.bars.emplace_back(std::to_string(row.case_index),
                            static_cast<double>(row.n_miss));
  } else {
    throw validation_error("overview bars support var or case units");
  }
  return out;
}

inline HeatmapData vis_miss_data(const Table& table, bool cluster = false,
                                 bool sort_vars = false) {
  HeatmapData out;
  out.missing.assign(table.n_rows(),
                     std::vector<bool>(table.n_cols(), false));
  for (std::size_t r = 0; r < table.n_rows(); ++r)
    for (std::size_t c = 0; c < table.n_cols(); ++c)
      out.missing[r][c] = table.at(r, c).is_missing();

  if (cluster) {
    out.row_order = miss_cluster_leaf_order(table);
  } else {
    out.row_order.resize(table.n_rows());
    for (std::size_t r = 0; r < table.n_rows(); ++r) out.row_order[r] = r;
  }

  auto summary = miss_var_summary(table);
  if (sort_vars) {
    for (const auto& row : summary) out.column_order.push_back(row.variable);
  } else {
    out.column_order = table.column_names();
  }
  for (const auto& name : out.column_order) {
    const auto& col = table.column(name);
    out.column_source.push_back(table.column_index(name));
    out.column_pct_miss.push_back(
        table.n_rows() == 0 ? 0.0
                            : 100.0 * static_cast<double>(col.n_miss()) /
                                  static_cast<double>(table.n_rows()));
  }
  out.overall_pct_miss =
      table.n_rows() == 0 || table.n_cols() == 0
          ? 0.0
          : rate_missing(table, MissUnit::Cell, RateForm::Percent);
  return out;
}

// Exact intersection counts of per-case missing-variable sets, over the
// variables that have at least one missing value.
inline UpsetData upset_data(const ShadowMatrix& shadow) {
  if (shadow.n_shadow_missing() == 0)
    throw empty_domain_error("upset_data: no missing cells");
  UpsetData out;
  std::map<std::vector<std::string>, std::size_t> counts;
  for (std::size_t r = 0; r < shadow.n_rows(); ++r) {
    std::vector<std::string> subset;
    for (const auto& col : shadow.columns)
      if (col.levels[r].is_missing()) subset.push_back(col.name);
    if (!subset.empty()) ++counts[subset];
  }
  for (const auto& [subset, count] : counts)
    out.patterns.push_back({subset, count});
  std::sort(out.patterns.begin(), out.patterns.end(),
            [](const UpsetPattern& a, const UpsetPattern& b) {
              if (a.count != b.count) return a.count > b.count;
              if (a.variables.size() != b.variables.size())
                return a.variables.size() < b.variables.size();
              return a.variables < b.variables;
            });
  for (const auto& col : shadow.columns) {
    std::size_t total = 0;
    for (const auto& p : out.patterns)
      if (std::find(p.variables.begin(), p.variables.end(), col.name) !=
          p.variables.end())
        total += p.count;
    if (total > 0) out.variable_totals.emplace_back(col.name, total);
  }
  return out;
}

// Equal-width right-open bins (last bin right-closed) over the observed
// range of plot_var; one count series per registered shadow level of
// condition_var.
inline SplitHistogramData split_histogram_data(const NabularTable& nab,
                                               const std::string& plot_var,
                                               const std::string& condition_var,
                                               std::size_t bins) {
  if (bins == 0) throw validation_error("bins must be >= 1");
  const Column& col = nab.data.column(plot_var);
  const StatsRow stats = observed_stats(col);
  const auto& shadow_col =
      nab.shadow.columns[nab.shadow.column_index(shadow_name(condition_var))];

  SplitHistogramData out;
  out.plot_var = plot_var;
  out.condition_var = condition_var;
  double lo = stats.min, hi = stats.max;
  if (lo == hi) hi = lo + 1;  // degenerate range
  for (std::size_t i = 0; i <= bins; ++i)
    out.edges.push_back(lo + (hi - lo) * static_cast<double>(i) /
                                 static_cast<double>(bins));

  for (const auto& level : nab.registry.levels)
    out.series.push_back(
        {level.render(), std::vector<std::size_t>(bins, 0)});
  for (std::size_t r = 0; r < nab.n_rows(); ++r) {
    if (col.cells[r].is_missing()) continue;
    const double v = col.cells[r].as_number();
    auto bin = static_cast<std::size_t>(
        std::floor((v - lo) / (hi - lo) * static_cast<double>(bins)));
    if (bin >= bins) bin = bins - 1;  // right-closed last bin
    const std::string label = shadow_col.levels[r].render();
    for (auto& s : out.series)
      if (s.label == label) {
        ++s.counts[bin];
        break;
      }
  }
  return out;
}

inline ScatterMissData scatter_miss_data(const NabularTable& nab,
                                         const std::string& x_var,
                                         const std::string& y_var,
                                         double shift_fraction = 0.1,
                                         const JitterParams& jitter = {}) {
  const Column& xc = nab.data.column(x_var);
  const Column& yc = nab.data.column(y_var);
  if (xc.n_miss() == xc.size() && yc.n_miss() == yc.size())
    throw empty_domain_error("scatter_miss_data: both variables all missing");

  // below-range imputation on a working copy; the input stays untouched
  Table work = nab.data;
  if (xc.n_miss() > 0)
    work = impute_below(work, Scope::at({x_var}), shift_fraction, jitter);
  if (yc.n_miss() > 0)
    work = impute_below(work, Scope::at({y_var}), shift_fraction, jitter);

  ScatterMissData out;
  out.x_var = x_var;
  out.y_var = y_var;
  out.shift_fraction = shift_fraction;
  const auto& sx =
      nab.shadow.columns[nab.shadow.column_index(shadow_name(x_var))];
  const auto& sy =
      nab.shadow.columns[nab.shadow.column_index(shadow_name(y_var))];
  const auto& wx = work.column(x_var);
  const auto& wy = work.column(y_var);
  for (std::size_t r = 0; r < nab.n_rows(); ++r) {
    ScatterPoint p;
    p.x = wx.cells[r].as_number();
    p.y = wy.cells[r].as_number();
    const bool mx = sx.levels[r].is_missing();
    const bool my = sy.levels[r].is_missing();
    p.label = mx && my  ? ScatterPoint::Label::ImputedBoth
              : mx      ? ScatterPoint::Label::ImputedX
              : my      ? ScatterPoint::Label::ImputedY
                        : ScatterPoint::Label::Observed;
    out.points.push_back(p);
  }
  return out;
}

inline ParallelCoordsData parallel_coords_data(
    const NabularTable& nab, const std::string& color_shadow_var) {
  const auto& shadow_col = nab.shadow.columns[nab.shadow.column_index(
      color_shadow_var.ends_with("_NA") ? color_shadow_var
                                        : shadow_name(color_shadow_var))];
  ParallelCoordsData out;
  out.color_shadow_var = shadow_col.name;
  std::size_t numeric_vars = 0;
  for (const auto& col : nab.data.columns()) {
    if (!col.is_numeric()) continue;
    auto shadow_it =
        std::find_if(nab.shadow.columns.begin(), nab.shadow.columns.end(),
                     [&](const ShadowColumn& sc) {
                       return sc.name == shadow_name(col.name);
                     });
    if (shadow_it == nab.shadow.columns.end()) continue;  // appended column
    ++numeric_vars;
    ParallelCoordsSeries s;
    s.variable = col.name;
    // scale over originally-observed values so below-range imputations
    // land below 0
    double mn = 0, mx = 0;
    bool any = false;
    for (std::size_t r = 0; r < col.size(); ++r) {
      if (col.cells[r].is_missing() || shadow_it->levels[r].is_missing())
        continue;
      const double v = col.cells[r].as_number();
      if (!any) {
        mn = mx = v;
        any = true;
      } else {
        mn = std::min(mn, v);
        mx = std::max(mx, v);
      }
    }
    for (const auto& c : col.cells) {
      if (c.is_missing()) {
        s.values.push_back(std::nullopt);
      } else if (mx == mn) {
        s.values.push_back(0.5);  // constant-column convention
      } else {
        s.values.push_back((c.as_number() - mn) / (mx - mn));
      }
    }
    out.series.push_back(std::move(s));
  }
  if (numeric_vars < 2)
    throw validation_error("parallel coordinates need >= 2 numeric variables");
  for (const auto& level : shadow_col.levels)
    out.case_labels.push_back(level.render());
  return out;
}

}  // namespace nabular
