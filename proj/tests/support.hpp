#pragma once

// Shared test helpers: fixture loading, random-table generation, a
// brute-force normal-equations solver (independent OLS oracle), and a
// small well-formedness check for SVG output.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nabular/csv.hpp"
#include "nabular/mechanism.hpp"
#include "nabular/random.hpp"
#include "nabular/table.hpp"

#ifndef NABULAR_FIXTURE_DIR
#define NABULAR_FIXTURE_DIR "fixtures"
#endif

namespace testsupport {

inline std::string fixture_path(const std::string& name) {
  return std::string(NABULAR_FIXTURE_DIR) + "/" + name;
}

inline nabular::Table load_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  if (!in) throw std::runtime_error("missing fixture: " + name);
  return nabular::read_delimited(in);
}

inline nabular::Table airquality() { return load_fixture("airquality.csv"); }
inline nabular::Table dat_ms() { return load_fixture("dat_ms.csv"); }

// Random numeric table with MCAR-style missingness, for property tests.
inline nabular::Table random_table(std::uint64_t seed, std::size_t n_rows,
                                   std::size_t n_cols, double miss_prob) {
  nabular::UniformStream values(seed);
  nabular::UniformStream gaps(seed ^ 0xabcdef1234567890ULL);
  std::vector<nabular::Column> cols(n_cols);
  for (std::size_t c = 0; c < n_cols; ++c) {
    cols[c].name = "v" + std::to_string(c);
    cols[c].dtype = nabular::Dtype::Numeric;
    for (std::size_t r = 0; r < n_rows; ++r) {
      const std::uint64_t i = c * n_rows + r;
      if (gaps.at(i) < miss_prob)
        cols[c].cells.push_back(nabular::Cell::missing());
      else
        cols[c].cells.push_back(
            nabular::Cell::number(std::floor(values.at(i) * 2000) / 10 - 100));
    }
  }
  return nabular::Table(std::move(cols));
}

// Gaussian elimination on X'X beta = X'y: the independent oracle for the
// QR-based fit.
inline std::vector<double> normal_equations(
    const std::vector<std::vector<double>>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  const std::size_t p = x.front().size();
  std::vector<std::vector<double>> a(p, std::vector<double>(p + 1, 0.0));
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t r = 0; r < n; ++r) a[i][j] += x[r][i] * x[r][j];
    for (std::size_t r = 0; r < n; ++r) a[i][p] += x[r][i] * y[r];
  }
  for (std::size_t k = 0; k < p; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < p; ++i)
      if (std::abs(a[i][k]) > std::abs(a[pivot][k])) pivot = i;
    std::swap(a[k], a[pivot]);
    for (std::size_t i = 0; i < p; ++i) {
      if (i == k) continue;
      const double f = a[i][k] / a[k][k];
      for (std::size_t j = k; j <= p; ++j) a[i][j] -= f * a[k][j];
    }
  }
  std::vector<double> beta(p);
  for (std::size_t k = 0; k < p; ++k) beta[k] = a[k][p] / a[k][k];
  return beta;
}

// Minimal XML well-formedness check: tag balance, quoted attributes,
// single root. Good enough to validate generated SVG.
inline bool well_formed_xml(const std::string& text) {
  std::vector<std::string> stack;
  std::size_t i = 0;
  bool seen_root = false;
  auto skip_until = [&](const std::string& end) {
    const auto pos = text.find(end, i);
    if (pos == std::string::npos) return false;
    i = pos + end.size();
    return true;
  };
  while (i < text.size()) {
    if (text[i] != '<') {
      ++i;
      continue;
    }
    if (text.compare(i, 2, "<?") == 0) {
      if (!skip_until("?>")) return false;
      continue;
    }
    if (text.compare(i, 4, "<!--") == 0) {
      if (!skip_until("-->")) return false;
      continue;
    }
    const auto close = text.find('>', i);
    if (close == std::string::npos) return false;
    std::string tag = text.substr(i + 1, close - i - 1);
    i = close + 1;
    bool is_end = !tag.empty() && tag.front() == '/';
    bool self_close = !tag.empty() && tag.back() == '/';
    if (is_end) tag = tag.substr(1);
    if (self_close) tag.pop_back();
    std::string name = tag.substr(0, tag.find_first_of(" \t\n"));
    if (name.empty()) return false;
    if (is_end) {
      if (stack.empty() || stack.back() != name) return false;
      stack.pop_back();
    } else if (!self_close) {
      if (stack.empty()) {
        if (seen_root) return false;  // second root
        seen_root = true;
      }
      stack.push_back(name);
    } else if (stack.empty()) {
      if (seen_root) return false;
      seen_root = true;
    }
  }
  return stack.empty() && seen_root;
}

inline std::size_t count_occurrences(const std::string& text,
                                     const std::string& needle) {
  std::size_t n = 0, pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    ++n;
    pos += needle.size();
  }
  return n;
}

}  // namespace testsupport
