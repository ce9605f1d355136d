#pragma once

// JSON payloads for summaries, scan reports, and plot data. Every plot
// payload carries "payload_version": 1.

#include <string>

#include <json.hpp>

#include "nabular/csv.hpp"
#include "nabular/plot.hpp"
#include "nabular/replace.hpp"
#include "nabular/summary.hpp"

namespace nabular {

inline constexpr int kPayloadVersion = 1;

using json = nlohmann::json;

inline json cell_to_json(const Cell& c) {
  if (c.is_missing()) return nullptr;
  const Value& v = *c.value;
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  return std::get<std::string>(v);
}

inline json to_json(const ScanReport& report) {
  json rows = json::array();
  for (const auto& r : report)
    rows.push_back({{"variable", r.variable},
                    {"value", r.value},
                    {"count", r.count}});
  return rows;
}

inline json to_json(const std::vector<VarSummaryRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    json row;
    if (!r.group.empty()) {
      json key = json::array();
      for (const auto& c : r.group) key.push_back(cell_to_json(c));
      row["group"] = key;
    }
    row["variable"] = r.variable;
    row["n_miss"] = r.n_miss;
    row["pct_miss"] = r.pct_miss;
    out.push_back(row);
  }
  return out;
}

inline json to_json(const std::vector<CaseSummaryRow>& rows) {
  json out = json::array();
  for (const auto& r : rows)
    out.push_back({{"case", r.case_index},
                   {"n_miss", r.n_miss},
                   {"pct_miss", r.pct_miss}});
  return out;
}

inline json to_json(const std::vector<TabulationRow>& rows,
                    const std::string& unit) {
  json out = json::array();
  for (const auto& r : rows)
    out.push_back({{"n_miss_in_" + unit, r.n_miss_in_unit},
                   {"n_" + unit + "s", r.n_units},
                   {"pct_" + unit + "s", r.pct_units}});
  return out;
}

inline json to_json(const std::vector<RunRow>& rows) {
  json out = json::array();
  for (const auto& r : rows)
    out.push_back({{"run_length", r.run_length},
                   {"is_missing", r.is_missing}});
  return out;
}

inline json to_json(const std::vector<SpanRow>& rows) {
  json out = json::array();
  for (const auto& r : rows)
    out.push_back({{"span_counter", r.span_counter},
                   {"n_miss", r.n_miss},
                   {"n_complete", r.n_complete},
                   {"span_size", r.span_size}});
  return out;
}

inline json to_json(const BarData& d) {
  json bars = json::array();
  for (const auto& [label, value] : d.bars)
    bars.push_back({{"label", label}, {"value", value}});
  return {{"payload_version", kPayloadVersion},
          {"type", "bar"},
          {"title", d.title},
          {"value_axis", d.value_axis},
          {"bars", bars}};
}

inline json to_json(const HeatmapData& d) {
  json grid = json::array();
  for (const auto& row : d.missing) {
    json r = json::array();
    for (bool m : row) r.push_back(m);
    grid.push_back(r);
  }
  return {{"payload_version", kPayloadVersion},
          {"type", "heatmap"},
          {"row_order", d.row_order},
          {"column_order", d.column_order},
          {"column_pct_miss", d.column_pct_miss},
          {"overall_pct_miss", d.overall_pct_miss},
          {"missing", grid}};
}

inline json to_json(const UpsetData& d) {
  json patterns = json::array();
  for (const auto& p : d.patterns)
    patterns.push_back({{"variables", p.variables}, {"count", p.count}});
  json totals = json::array();
  for (const auto& [name, count] : d.variable_totals)
    totals.push_back({{"variable", name}, {"count", count}});
  return {{"payload_version", kPayloadVersion},
          {"type", "upset"},
          {"patterns", patterns},
          {"variable_totals", totals}};
}

inline json to_json(const SplitHistogramData& d) {
  json series = json::array();
  for (const auto& s : d.series)
    series.push_back({{"label", s.label}, {"counts", s.counts}});
  return {{"payload_version", kPayloadVersion},
          {"type", "split_histogram"},
          {"plot_var", d.plot_var},
          {"condition_var", d.condition_var},
          {"edges", d.edges},
          {"series", series}};
}

inline json to_json(const ScatterMissData& d) {
  static const char* labels[] = {"observed", "imputed-x", "imputed-y",
                                 "imputed-both"};
  json points = json::array();
  for (const auto& p : d.points)
    points.push_back({{"x", p.x},
                      {"y", p.y},
                      {"label", labels[static_cast<int>(p.label)]}});
  return {{"payload_version", kPayloadVersion},
          {"type", "scatter_miss"},
          {"x_var", d.x_var},
          {"y_var", d.y_var},
          {"shift_fraction", d.shift_fraction},
          {"points", points}};
}

inline json to_json(const ParallelCoordsData& d) {
  json series = json::array();
  for (const auto& s : d.series) {
    json vals = json::array();
    for (const auto& v : s.values)
      vals.push_back(v ? json(*v) : json(nullptr));
    series.push_back({{"variable", s.variable}, {"values", vals}});
  }
  return {{"payload_version", kPayloadVersion},
          {"type", "parallel_coords"},
          {"color_shadow_var", d.color_shadow_var},
          {"case_labels", d.case_labels},
          {"series", series}};
}

}  // namespace nabular
