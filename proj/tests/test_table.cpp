#include <doctest.h>

#include <sstream>

#include "nabular/csv.hpp"
#include "nabular/table.hpp"
#include "support.hpp"

using namespace nabular;

TEST_CASE("read_delimited: airquality fixture") {
  const Table t = testsupport::airquality();
  CHECK(t.n_rows() == 153);
  CHECK(t.n_cols() == 6);
  CHECK(t.n_miss() == 44);
  CHECK(t.column("Ozone").dtype == Dtype::Integer);
  CHECK(t.column("Wind").dtype == Dtype::Numeric);
}

TEST_CASE("read_delimited: header-only file") {
  const Table t = read_delimited(std::string("a,b,c\n"));
  CHECK(t.n_rows() == 0);
  CHECK(t.n_cols() == 3);
  CHECK(t.n_miss() == 0);
}

TEST_CASE("read_delimited: dat_ms fixture has exactly 2 missing") {
  const Table t = testsupport::dat_ms();
  CHECK(t.n_rows() == 5);
  CHECK(t.n_miss() == 2);
  CHECK(t.at(2, 0).is_missing());
  CHECK(t.at(2, 1).is_missing());
  // "N/A" is not a default NA token: y stays text and present
  CHECK(t.column("y").dtype == Dtype::Text);
  CHECK(t.at(1, 1).as_text() == "N/A");
  CHECK(t.column("x").dtype == Dtype::Integer);
}

TEST_CASE("read_delimited: errors") {
  CHECK_THROWS_AS(read_delimited(std::string("a,b\n1\n")), parse_error);
  CHECK_THROWS_AS(read_delimited(std::string("a,a\n1,2\n")), schema_error);
  CHECK_THROWS_AS(read_delimited(std::string("")), schema_error);
}

TEST_CASE("read_delimited: quoting and custom tokens") {
  const Table t = read_delimited(std::string("a,b\n\"1,5\",x\n\"say \"\"hi\"\"\",-1\n"));
  CHECK(t.column("a").dtype == Dtype::Text);
  CHECK(t.at(0, 0).as_text() == "1,5");
  CHECK(t.at(1, 0).as_text() == "say \"hi\"");

  NaTokenConfig cfg;
  cfg.text_tokens = {"-99", "NA"};
  const Table u = read_delimited(std::string("a\n1\n-99\n"), cfg);
  CHECK(u.at(1, 0).is_missing());
}

TEST_CASE("write_delimited round-trips the fixtures") {
  for (const auto* name : {"dat_ms.csv", "airquality.csv"}) {
    const Table t = testsupport::load_fixture(name);
    const Table again = read_delimited(write_delimited(t));
    CHECK(again == t);
  }
  const Table aq = testsupport::airquality();
  CHECK(read_delimited(write_delimited(aq)).n_miss() == 44);
}

TEST_CASE("write_delimited: empty table emits header only") {
  const Table t = read_delimited(std::string("a,b\n"));
  CHECK(write_delimited(t) == "a,b\n");
}

TEST_CASE("round-trip property on random tables") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Table t = testsupport::random_table(seed, 20, 4, 0.2);
    CHECK(read_delimited(write_delimited(t)) == t);
  }
}

TEST_CASE("missing + present counts partition the grid") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Table t = testsupport::random_table(seed, 17, 3, 0.3);
    std::size_t present = 0;
    for (const auto& c : t.columns())
      for (const auto& cell : c.cells)
        if (!cell.is_missing()) ++present;
    CHECK(t.n_miss() + present == t.n_rows() * t.n_cols());
  }
}

TEST_CASE("group_by: airquality by Month") {
  const auto g = group_by(testsupport::airquality(), {"Month"});
  REQUIRE(g.groups.size() == 5);
  CHECK(g.groups[0].key[0].as_number() == 5);
  CHECK(g.groups[0].rows.size() == 31);
  CHECK(g.groups[4].key[0].as_number() == 9);
}

TEST_CASE("group_by: zero keys is one group, missing keys group together") {
  const Table d = testsupport::dat_ms();
  const auto all = group_by(d, {});
  REQUIRE(all.groups.size() == 1);
  CHECK(all.groups[0].rows.size() == 5);

  const auto by_y = group_by(d, {"y"});
  CHECK(by_y.groups.size() == 5);  // all distinct; NA its own group

  CHECK_THROWS_AS(group_by(d, {"nope"}), name_error);
}

TEST_CASE("group_by partitions row indices") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Table t = testsupport::random_table(seed, 30, 3, 0.4);
    const auto g = group_by(t, {"v0"});
    std::vector<bool> seen(t.n_rows(), false);
    std::size_t total = 0;
    for (const auto& grp : g.groups)
      for (auto r : grp.rows) {
        CHECK(!seen[r]);
        seen[r] = true;
        ++total;
      }
    CHECK(total == t.n_rows());
  }
}

TEST_CASE("observed_stats: airquality Ozone") {
  const auto s = observed_stats(testsupport::airquality().column("Ozone"));
  CHECK(s.min == 1);
  CHECK(s.max == 168);
  CHECK(s.n_observed == 116);
}

TEST_CASE("observed_stats: dat_ms x and edge cases") {
  const Table d = testsupport::dat_ms();
  const auto s = observed_stats(d.column("x"));
  CHECK(s.mean == doctest::Approx(-48.25));
  CHECK(s.median == doctest::Approx(-48.5));  // middle pair of sorted (-99,-98,1,3)

  Column single{"v", Dtype::Numeric, {Cell::number(7)}};
  const auto ss = observed_stats(single);
  CHECK(ss.min == 7);
  CHECK(ss.mean == 7);
  CHECK(ss.median == 7);
  CHECK(ss.max == 7);

  Column empty{"v", Dtype::Numeric, {Cell::missing()}};
  CHECK_THROWS_AS(observed_stats(empty), empty_domain_error);
  CHECK_THROWS_AS(observed_stats(d.column("y")), type_error);
}

TEST_CASE("observed_stats ignores appended missing cells") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Table t = testsupport::random_table(seed, 25, 1, 0.1);
    Column col = t.column(std::size_t{0});
    if (col.n_miss() == col.size()) continue;
    const auto before = observed_stats(col);
    col.cells.push_back(Cell::missing());
    col.cells.insert(col.cells.begin(), Cell::missing());
    const auto after = observed_stats(col);
    CHECK(after.min == before.min);
    CHECK(after.mean == doctest::Approx(before.mean).epsilon(1e-12));
    CHECK(after.median == before.median);
    CHECK(after.max == before.max);
  }
}
