#include <doctest.h>

#include <algorithm>
#include <set>

#include "nabular/replace.hpp"
#include "support.hpp"

using namespace nabular;

namespace {

std::size_t report_total(const ScanReport& r) {
  std::size_t n = 0;
  for (const auto& row : r) n += row.count;
  return n;
}

}  // namespace

TEST_CASE("common token lists") {
  const auto& nums = common_na_numbers();
  CHECK(std::find(nums.begin(), nums.end(), -99) != nums.end());
  CHECK(std::find(nums.begin(), nums.end(), -98) != nums.end());
  CHECK(std::find(nums.begin(), nums.end(), -999) != nums.end());
  const auto& strs = common_na_strings();
  for (const auto* s : {"NA", "N/A", "missing", "MISSING", "na", "n/a", ""})
    CHECK(std::find(strs.begin(), strs.end(), s) != strs.end());
  CHECK(std::set<double>(nums.begin(), nums.end()).size() == nums.size());
  CHECK(std::set<std::string>(strs.begin(), strs.end()).size() == strs.size());
}

TEST_CASE("miss_scan_count: dat_ms") {
  const Table d = testsupport::dat_ms();
  const auto by99 = miss_scan_count(d, {Cell::number(-99)});
  REQUIRE(by99.size() == 3);  // one row per column, zeros included
  CHECK(by99[0] == ScanRow{"x", "-99", 1});
  CHECK(by99[1] == ScanRow{"y", "-99", 0});
  CHECK(by99[2] == ScanRow{"z", "-99", 1});

  const auto byna = miss_scan_count(d, {Cell::text("N/A")});
  CHECK(byna[0].count == 0);
  CHECK(byna[1].count == 1);
  CHECK(byna[2].count == 0);

  CHECK(report_total(miss_scan_count(d, {Cell::number(123456)})) == 0);
  CHECK_THROWS_AS(miss_scan_count(d, {}), validation_error);
}

TEST_CASE("replace_with_na: dat_ms") {
  const Table d = testsupport::dat_ms();
  ReplaceSpec spec;
  spec.columns.emplace_back("x", std::vector<Cell>{Cell::number(-99)});
  const Table r = replace_with_na(d, spec);
  CHECK(r.at(3, 0).is_missing());
  CHECK(r.n_miss() == 3);
  CHECK(r.column("x").dtype == d.column("x").dtype);

  CHECK(replace_with_na(d, ReplaceSpec{}) == d);

  ReplaceSpec full;
  full.columns.emplace_back("y", std::vector<Cell>{Cell::text("N/A")});
  full.columns.emplace_back("x", std::vector<Cell>{Cell::number(-99),
                                                   Cell::number(-98)});
  full.columns.emplace_back("z", std::vector<Cell>{
                                     Cell::number(-99), Cell::number(-98),
                                     Cell::number(-100), Cell::number(-101)});
  CHECK(replace_with_na(d, full).n_miss() == 9);  // 2 already missing + 7 sentinels

  ReplaceSpec bad;
  bad.columns.emplace_back("nope", std::vector<Cell>{Cell::number(1)});
  CHECK_THROWS_AS(replace_with_na(d, bad), name_error);
}

TEST_CASE("replace_with_na_scoped") {
  const Table d = testsupport::dat_ms();
  const Table all = replace_with_na_scoped(d, Scope::all(), {Cell::number(-99)});
  CHECK(all.at(3, 0).is_missing());
  CHECK(all.at(1, 2).is_missing());
  CHECK(all.n_miss() == 4);

  const Table if_text = replace_with_na_scoped(d, Scope::if_dtype(Dtype::Text),
                                               {Cell::text("N/A")});
  CHECK(if_text.at(1, 1).is_missing());
  CHECK(if_text.n_miss() == 3);

  CHECK(replace_with_na_scoped(d, Scope::at({}), {Cell::number(-99)}) == d);
  CHECK_THROWS_AS(replace_with_na_scoped(d, Scope::at({"nope"}), {Cell::number(1)}),
                  name_error);
}

TEST_CASE("scan/replace conservation and idempotence") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Table t = testsupport::random_table(seed, 40, 4, 0.15);
    // random tables draw from a small grid, so -99 etc. can occur; pick a
    // value present in the table to make the check interesting
    std::vector<Cell> values{Cell::number(-50), Cell::number(0.5)};
    const std::size_t matched = report_total(miss_scan_count(t, values));
    const Table replaced = replace_with_na_scoped(t, Scope::all(), values);
    CHECK(replaced.n_miss() == t.n_miss() + matched);
    CHECK(replace_with_na_scoped(replaced, Scope::all(), values) == replaced);

    // All == At(all names) == union of per-column replaces
    const Table at_all =
        replace_with_na_scoped(t, Scope::at(t.column_names()), values);
    CHECK(at_all == replaced);
    ReplaceSpec per_col;
    for (const auto& n : t.column_names()) per_col.columns.emplace_back(n, values);
    CHECK(replace_with_na(t, per_col) == replaced);
  }
}

TEST_CASE("replace never resurrects missing cells or touches non-matches") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Table t = testsupport::random_table(seed, 30, 3, 0.3);
    const std::vector<Cell> values{Cell::number(-50)};
    const Table r = replace_with_na_scoped(t, Scope::all(), values);
    for (std::size_t c = 0; c < t.n_cols(); ++c)
      for (std::size_t row = 0; row < t.n_rows(); ++row) {
        const Cell& before = t.at(row, c);
        const Cell& after = r.at(row, c);
        if (before.is_missing()) CHECK(after.is_missing());
        else if (before.as_number() == -50) CHECK(after.is_missing());
        else CHECK(after == before);
      }
  }
}
