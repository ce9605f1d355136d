#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "nabular/plot.hpp"
#include "nabular/render.hpp"
#include "support.hpp"

using namespace nabular;

TEST_CASE("miss_overview_bars: airquality per variable") {
  const auto bars = miss_overview_bars(testsupport::airquality(), MissUnit::Var);
  REQUIRE(bars.bars.size() == 6);
  CHECK(bars.bars[0] == std::pair<std::string, double>{"Ozone", 37.0});
  CHECK(bars.bars[1] == std::pair<std::string, double>{"Solar.R", 7.0});
  CHECK(bars.bars[2].second == 0.0);

  const auto cases = miss_overview_bars(testsupport::airquality(), MissUnit::Case);
  CHECK(cases.bars.size() == 153);
  CHECK(cases.bars[0].second == 2.0);
  double total = 0;
  for (const auto& [label, v] : cases.bars) total += v;
  CHECK(total == 44.0);

  CHECK_THROWS_AS(miss_overview_bars(testsupport::airquality(), MissUnit::Cell),
                  validation_error);
}

TEST_CASE("vis_miss_data: orders and percentages") {
  const Table aq = testsupport::airquality();
  const auto plain = vis_miss_data(aq);
  CHECK(plain.overall_pct_miss == doctest::Approx(100.0 * 44 / 918));
  CHECK(plain.column_order == aq.column_names());
  CHECK(plain.column_pct_miss[0] == doctest::Approx(100.0 * 37 / 153));
  for (std::size_t r = 0; r < 153; ++r) CHECK(plain.row_order[r] == r);
  CHECK(plain.missing[4][0]);   // row 5 misses Ozone
  CHECK(!plain.missing[0][0]);

  const auto sorted = vis_miss_data(aq, false, true);
  CHECK(sorted.column_order[0] == "Ozone");
  CHECK(sorted.column_order[1] == "Solar.R");
  CHECK(sorted.source_column(0) == 0);
  CHECK(sorted.column_pct_miss[0] == doctest::Approx(100.0 * 37 / 153));

  const auto clustered = vis_miss_data(aq, true);
  CHECK(std::set<std::size_t>(clustered.row_order.begin(),
                              clustered.row_order.end()).size() == 153);
  CHECK(clustered.row_order == vis_miss_data(aq, true).row_order);
}

TEST_CASE("upset_data: airquality intersections") {
  const auto upset = upset_data(as_shadow(testsupport::airquality()));
  REQUIRE(upset.patterns.size() == 3);
  CHECK(upset.patterns[0] ==
        UpsetPattern{{"Ozone_NA"}, 35});
  CHECK(upset.patterns[1] ==
        UpsetPattern{{"Solar.R_NA"}, 5});
  CHECK(upset.patterns[2] ==
        UpsetPattern{{"Ozone_NA", "Solar.R_NA"}, 2});

  REQUIRE(upset.variable_totals.size() == 2);
  CHECK(upset.variable_totals[0] ==
        std::pair<std::string, std::size_t>{"Ozone_NA", 37});
  CHECK(upset.variable_totals[1] ==
        std::pair<std::string, std::size_t>{"Solar.R_NA", 7});

  // pattern counts add up to the cases with any missingness
  std::size_t cases = 0;
  for (const auto& p : upset.patterns) cases += p.count;
  CHECK(cases == 42);

  CHECK_THROWS_AS(upset_data(as_shadow(read_delimited(std::string("a\n1\n")))),
                  empty_domain_error);
}

TEST_CASE("split_histogram_data: Temp conditioned on Ozone missingness") {
  const auto nab = as_nabular(testsupport::airquality());
  const auto hist = split_histogram_data(nab, "Temp", "Ozone", 10);
  CHECK(hist.plot_var == "Temp");
  CHECK(hist.condition_var == "Ozone");
  REQUIRE(hist.edges.size() == 11);
  CHECK(hist.edges.front() == 56.0);
  CHECK(hist.edges.back() == 97.0);
  for (std::size_t i = 1; i < hist.edges.size(); ++i)
    CHECK(hist.edges[i] > hist.edges[i - 1]);

  REQUIRE(hist.series.size() == 2);  // one per registered level
  CHECK(hist.series[0].label == "!NA");
  CHECK(hist.series[1].label == "NA");
  const auto total = [](const SplitHistogramSeries& s) {
    return std::accumulate(s.counts.begin(), s.counts.end(), std::size_t{0});
  };
  CHECK(total(hist.series[0]) == 116);
  CHECK(total(hist.series[1]) == 37);

  CHECK_THROWS_AS(split_histogram_data(nab, "Temp", "Ozone", 0),
                  validation_error);
  // a recoded level gets its own series
  const auto recoded = recode_shadow(
      nab, "Ozone", WhereClause::single("Ozone", WherePredicate::Op::IsMissing),
      "dropout");
  const auto split3 = split_histogram_data(recoded, "Temp", "Ozone", 5);
  REQUIRE(split3.series.size() == 3);
  CHECK(split3.series[2].label == "NA_dropout");
  CHECK(total(split3.series[2]) == 37);
  CHECK(total(split3.series[1]) == 0);
}

TEST_CASE("scatter_miss_data: Ozone vs Solar.R") {
  const auto nab = as_nabular(testsupport::airquality());
  const auto scatter = scatter_miss_data(nab, "Ozone", "Solar.R");
  REQUIRE(scatter.points.size() == 153);

  std::size_t obs = 0, ix = 0, iy = 0, both = 0;
  for (const auto& p : scatter.points) {
    switch (p.label) {
      case ScatterPoint::Label::Observed: ++obs; break;
      case ScatterPoint::Label::ImputedX: ++ix; break;
      case ScatterPoint::Label::ImputedY: ++iy; break;
      case ScatterPoint::Label::ImputedBoth: ++both; break;
    }
  }
  CHECK(obs == 111);
  CHECK(ix == 35);
  CHECK(iy == 5);
  CHECK(both == 2);

  // imputed coordinates sit strictly below the observed minima
  for (const auto& p : scatter.points) {
    if (p.label == ScatterPoint::Label::ImputedX ||
        p.label == ScatterPoint::Label::ImputedBoth)
      CHECK(p.x < 1.0);
    if (p.label == ScatterPoint::Label::ImputedY ||
        p.label == ScatterPoint::Label::ImputedBoth)
      CHECK(p.y < 7.0);
  }

  const auto all_missing = as_nabular(read_delimited(std::string("a,b\nNA,NA\n")));
  CHECK_THROWS_AS(scatter_miss_data(all_missing, "a", "b"), empty_domain_error);
}

TEST_CASE("parallel_coords_data: scaling and labels") {
  const auto nab = as_nabular(testsupport::airquality());
  const auto pc = parallel_coords_data(nab, "Ozone");
  CHECK(pc.color_shadow_var == "Ozone_NA");
  REQUIRE(pc.series.size() == 6);
  CHECK(pc.case_labels.size() == 153);
  CHECK(std::count(pc.case_labels.begin(), pc.case_labels.end(), "NA") == 37);

  for (const auto& s : pc.series) {
    REQUIRE(s.values.size() == 153);
    for (const auto& v : s.values)
      if (v) {
        CHECK(*v >= 0.0);
        CHECK(*v <= 1.0);
      }
  }
  // missing values stay gaps
  CHECK(!pc.series[0].values[4].has_value());

  // after below-range imputation the imputed cases drop under the axis
  const auto imputed = impute_below(nab, Scope::at({"Ozone"}));
  const auto pc2 = parallel_coords_data(imputed, "Ozone");
  for (std::size_t r = 0; r < 153; ++r) {
    if (pc2.case_labels[r] == "NA") {
      REQUIRE(pc2.series[0].values[r].has_value());
      CHECK(*pc2.series[0].values[r] < 0.0);
    }
  }

  const auto skinny = as_nabular(read_delimited(std::string("a,b\n1,x\n2,y\n")));
  CHECK_THROWS_AS(parallel_coords_data(skinny, "a"), validation_error);
}

TEST_CASE("SVG renders are well-formed and deterministic") {
  const Table aq = testsupport::airquality();
  const auto nab = as_nabular(aq);

  const std::string bar = render(miss_overview_bars(aq, MissUnit::Var));
  CHECK(testsupport::well_formed_xml(bar));
  CHECK(testsupport::count_occurrences(bar, "<rect") == 6);
  CHECK(bar == render(miss_overview_bars(aq, MissUnit::Var)));

  const std::string heat = render(vis_miss_data(aq, true, true));
  CHECK(testsupport::well_formed_xml(heat));
  CHECK(testsupport::count_occurrences(heat, "<rect") == 918);

  const std::string upset = render(upset_data(as_shadow(aq)));
  CHECK(testsupport::well_formed_xml(upset));
  CHECK(testsupport::count_occurrences(upset, "<rect") == 3);
  CHECK(testsupport::count_occurrences(upset, "<circle") == 6);

  const std::string hist = render(split_histogram_data(nab, "Temp", "Ozone", 10));
  CHECK(testsupport::well_formed_xml(hist));
  CHECK(testsupport::count_occurrences(hist, "<rect") == 20);

  const std::string scatter = render(scatter_miss_data(nab, "Ozone", "Solar.R"));
  CHECK(testsupport::well_formed_xml(scatter));
  CHECK(testsupport::count_occurrences(scatter, "<circle") == 153);

  const std::string pc = render(parallel_coords_data(nab, "Ozone"));
  CHECK(testsupport::well_formed_xml(pc));
  CHECK(testsupport::count_occurrences(pc, "<path") == 153);

  RenderOptions tiny;
  tiny.width = 10;  // smaller than the margins
  CHECK_THROWS_AS(render(miss_overview_bars(aq, MissUnit::Var), tiny),
                  validation_error);
}

TEST_CASE("SVG escapes markup in labels") {
  BarData data{"a<b>&\"title\"", "n", {{"x<y", 1.0}}};
  const std::string svg = render(data);
  CHECK(testsupport::well_formed_xml(svg));
  CHECK(svg.find("a&lt;b&gt;&amp;&quot;title&quot;") != std::string::npos);
  CHECK(svg.find("x<y") == std::string::npos);
}

TEST_CASE("text renders") {
  const Table aq = testsupport::airquality();
  const std::string bars = render_text(miss_overview_bars(aq, MissUnit::Var));
  CHECK(bars.find("Ozone") != std::string::npos);
  CHECK(bars.find("########") != std::string::npos);
  // zero-count bars draw no glyphs
  CHECK(bars.find("Wind ") != std::string::npos);

  const std::string heat = render_text(vis_miss_data(testsupport::dat_ms()));
  CHECK(heat.find("legend") != std::string::npos);
  // dat_ms row 3 misses x and y but not z
  CHECK(heat.find("##.") != std::string::npos);
  CHECK(std::count(heat.begin(), heat.end(), '\n') == 7);  // 2 header + 5 rows
}
