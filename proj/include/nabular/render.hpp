#pragma once

// Deterministic static renderers: SVG 1.1 output for every payload type,
// plus fixed-width text charts for bars and heatmaps.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "nabular/csv.hpp"
#include "nabular/plot.hpp"

namespace nabular {

struct RenderOptions {
  double width = 640;
  double height = 480;
  double margin = 40;
  std::string present_color = "#2b6a6c";
  std::string missing_color = "#e8a33d";
};

namespace detail {

inline void check_canvas(const RenderOptions& o) {
  if (o.width <= 0 || o.height <= 0 || o.width <= 2 * o.margin ||
      o.height <= 2 * o.margin)
    throw validation_error("zero-area canvas");
}

inline std::string num(double v) { return format_number(round_half_away(v, 3)); }

inline std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::ostringstream svg_open(const RenderOptions& o) {
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << num(o.width) << "\" height=\"" << num(o.height) << "\">\n";
  return svg;
}

}  // namespace detail

// ---------------------------------------------------------------- SVG

// One rect per bar.
inline std::string render(const BarData& data, const RenderOptions& o = {}) {
  detail::check_canvas(o);
  auto svg = detail::svg_open(o);
  svg << "<text x=\"" << detail::num(o.margin) << "\" y=\"20\">"
      << detail::escape_xml(data.title) << "</text>\n";
  const double plot_w = o.width - 2 * o.margin;
  const double plot_h = o.height - 2 * o.margin;
  const std::size_t n = data.bars.size();
  double max_v = 1;
  for (const auto& [label, v] : data.bars) max_v = std::max(max_v, v);
  const double slot = n == 0 ? plot_h : plot_h / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [label, v] = data.bars[i];
    const double y = o.margin + slot * static_cast<double>(i);
    const double w = plot_w * v / max_v;
    svg << "<rect x=\"" << detail::num(o.margin) << "\" y=\""
        << detail::num(y + slot * 0.1) << "\" width=\"" << detail::num(w)
        << "\" height=\"" << detail::num(slot * 0.8) << "\" fill=\""
        << o.missing_color << "\"/>\n";
    svg << "<text x=\"" << detail::num(o.margin) << "\" y=\""
        << detail::num(y + slot * 0.6) << "\" font-size=\"10\">"
        << detail::escape_xml(label) << " (" << detail::num(v) << ")"
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

// One rect per (row, column) cell.
inline std::string render(const HeatmapData& data, const RenderOptions& o = {}) {
  detail::check_canvas(o);
  auto svg = detail::svg_open(o);
  const double plot_w = o.width - 2 * o.margin;
  const double plot_h = o.height - 2 * o.margin;
  const std::size_t n_rows = data.row_order.size();
  const std::size_t n_cols = data.column_order.size();
  svg << "<text x=\"" << detail::num(o.margin) << "\" y=\"20\">missing: "
      << detail::num(data.overall_pct_miss) << "%</text>\n";
  if (n_rows > 0 && n_cols > 0) {
    const double cw = plot_w / static_cast<double>(n_cols);
    const double ch = plot_h / static_cast<double>(n_rows);
    for (std::size_t i = 0; i < n_rows; ++i) {
      const std::size_t src_row = data.row_order[i];
      for (std::size_t j = 0; j < n_cols; ++j) {
        // column_order holds names; grid is source-order, so map by position
        // of the name in its original order via the pct label alignment
        const bool miss = data.missing[src_row][data.source_column(j)];
        svg << "<rect x=\"" << detail::num(o.margin + cw * j) << "\" y=\""
            << detail::num(o.margin + ch * i) << "\" width=\""
            << detail::num(cw) << "\" height=\"" << detail::num(ch)
            << "\" fill=\"" << (miss ? o.missing_color : o.present_color)
            << "\"/>\n";
      }
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

inline std::string render(const UpsetData& data, const RenderOptions& o = {}) {
  detail::check_canvas(o);
  auto svg = detail::svg_open(o);
  const double plot_w = o.width - 2 * o.margin;
  const double plot_h = (o.height - 2 * o.margin) / 2;
  const std::size_t n = data.patterns.size();
  double max_c = 1;
  for (const auto& p : data.patterns)
    max_c = std::max(max_c, static_cast<double>(p.count));
  const double slot = n == 0 ? plot_w : plot_w / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = data.patterns[i];
    const double h = plot_h * static_cast<double>(p.count) / max_c;
    svg << "<rect x=\"" << detail::num(o.margin + slot * i + slot * 0.1)
        << "\" y=\"" << detail::num(o.margin + plot_h - h) << "\" width=\""
        << detail::num(slot * 0.8) << "\" height=\"" << detail::num(h)
        << "\" fill=\"" << o.missing_color << "\"/>\n";
    // membership dots under each pattern bar
    for (std::size_t v = 0; v < data.variable_totals.size(); ++v) {
      const auto& name = data.variable_totals[v].first;
      const bool in = std::find(p.variables.begin(), p.variables.end(),
                                name) != p.variables.end();
      svg << "<circle cx=\"" << detail::num(o.margin + slot * i + slot * 0.5)
          << "\" cy=\"" << detail::num(o.margin + plot_h + 15 + 12 * v)
          << "\" r=\"4\" fill=\"" << (in ? o.missing_color : "#cccccc")
          << "\"/>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

inline std::string render(const SplitHistogramData& data,
                          const RenderOptions& o = {}) {
  detail::check_canvas(o);
  auto svg = detail::svg_open(o);
  const double plot_w = o.width - 2 * o.margin;
  const std::size_t n_series = data.series.size();
  const double band_h = n_series == 0
                            ? 0
                            : (o.height - 2 * o.margin) /
                                  static_cast<double>(n_series);
  const std::size_t bins = data.edges.size() - 1;
  std::size_t max_c = 1;
  for (const auto& s : data.series)
    for (auto c : s.counts) max_c = std::max(max_c, c);
  for (std::size_t si = 0; si < n_series; ++si) {
    const auto& s = data.series[si];
    const double base = o.margin + band_h * static_cast<double>(si + 1);
    svg << "<text x=\"" << detail::num(o.margin) << "\" y=\""
        << detail::num(base - band_h + 12) << "\" font-size=\"10\">"
        << detail::escape_xml(s.label) << "</text>\n";
    for (std::size_t b = 0; b < bins; ++b) {
      const double h =
          (band_h - 16) * static_cast<double>(s.counts[b]) /
          static_cast<double>(max_c);
      svg << "<rect x=\""
          << detail::num(o.margin + plot_w * static_cast<double>(b) /
                                        static_cast<double>(bins))
          << "\" y=\"" << detail::num(base - h) << "\" width=\""
          << detail::num(plot_w / static_cast<double>(bins)) << "\" height=\""
          << detail::num(h) << "\" fill=\"" << o.missing_color << "\"/>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

inline std::string render(const ScatterMissData& data,
                          const RenderOptions& o = {}) {
  detail::check_canvas(o);
  auto svg = detail::svg_open(o);
  double min_x = 0, max_x = 1, min_y = 0, max_y = 1;
  if (!data.points.empty()) {
    min_x = max_x = data.points.front().x;
    min_y = max_y = data.points.front().y;
    for (const auto& p : data.points) {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
      max_y = std::max(max_y, p.y);
    }
  }
  if (max_x == min_x) max_x = min_x + 1;
  if (max_y == min_y) max_y = min_y + 1;
  const double plot_w = o.width - 2 * o.margin;
  const double plot_h = o.height - 2 * o.margin;
  for (const auto& p : data.points) {
    const double cx = o.margin + plot_w * (p.x - min_x) / (max_x - min_x);
    const double cy =
        o.height - o.margin - plot_h * (p.y - min_y) / (max_y - min_y);
    const bool miss = p.label != ScatterPoint::Label::Observed;
    svg << "<circle cx=\"" << detail::num(cx) << "\" cy=\"" << detail::num(cy)
        << "\" r=\"3\" fill=\"" << (miss ? o.missing_color : o.present_color)
        << "\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

inline std::string render(const ParallelCoordsData& data,
                          const RenderOptions& o = {}) {
  detail::check_canvas(o);
  auto svg = detail::svg_open(o);
  const double plot_w = o.width - 2 * o.margin;
  const double plot_h = o.height - 2 * o.margin;
  const std::size_t n_vars = data.series.size();
  const std::size_t n_cases = data.case_labels.size();
  for (std::size_t r = 0; r < n_cases; ++r) {
    const bool miss = data.case_labels[r] != "!NA";
    std::ostringstream path;
    bool first = true;
    for (std::size_t v = 0; v < n_vars; ++v) {
      const auto& val = data.series[v].values[r];
      if (!val) continue;
      const double x =
          o.margin + (n_vars <= 1
                          ? 0
                          : plot_w * static_cast<double>(v) /
                                static_cast<double>(n_vars - 1));
      const double y = o.height - o.margin - plot_h * *val;
      path << (first ? "M" : "L") << detail::num(x) << ' ' << detail::num(y);
      first = false;
    }
    svg << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\""
        << (miss ? o.missing_color : o.present_color)
        << "\" stroke-opacity=\"0.5\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

// ---------------------------------------------------------------- text

// Fixed-width bar chart: one line per bar, '#' glyphs scaled to the
// largest value.
inline std::string render_text(const BarData& data, std::size_t width = 40) {
  std::ostringstream out;
  out << data.title << " (" << data.value_axis << ")\n";
  std::size_t label_w = 0;
  double max_v = 1;
  for (const auto& [label, v] : data.bars) {
    label_w = std::max(label_w, label.size());
    max_v = std::max(max_v, v);
  }
  for (const auto& [label, v] : data.bars) {
    const auto glyphs = static_cast<std::size_t>(
        std::lround(static_cast<double>(width) * v / max_v));
    out << label << std::string(label_w - label.size() + 1, ' ')
        << std::string(glyphs, '#') << ' ' << detail::num(v) << '\n';
  }
  return out.str();
}

// Heatmap legend: '#' = missing, '.' = present; one glyph per cell.
inline std::string render_text(const HeatmapData& data) {
  std::ostringstream out;
  out << "missing: " << detail::num(data.overall_pct_miss)
      << "%  legend: '#'=missing '.'=present\n";
  for (std::size_t j = 0; j < data.column_order.size(); ++j)
    out << data.column_order[j] << " ("
        << detail::num(data.column_pct_miss[j]) << "%)"
        << (j + 1 < data.column_order.size() ? " " : "\n");
  for (std::size_t i = 0; i < data.row_order.size(); ++i) {
    const std::size_t src_row = data.row_order[i];
    for (std::size_t j = 0; j < data.column_order.size(); ++j)
      out << (data.missing[src_row][data.source_column(j)] ? '#' : '.');
    out << '\n';
  }
  return out.str();
}

}  // namespace nabular
