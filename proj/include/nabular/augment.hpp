#pragma once

// Per-row missingness columns appended to a table: counts, proportions,
// any-miss labels, shadow labels, and cluster membership from agglomerative
// clustering of binary missingness row-vectors.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "nabular/shadow.hpp"
#include "nabular/summary.hpp"
#include "nabular/table.hpp"

namespace nabular {

enum class MissCountMode { N, Proportion, Any };

inline Table add_miss_counts(const Table& table, MissCountMode mode) {
  Column col;
  col.cells.reserve(table.n_rows());
  switch (mode) {
    case MissCountMode::N:
      col.name = "n_miss_all";
      col.dtype = Dtype::Integer;
      break;
    case MissCountMode::Proportion:
      col.name = "prop_miss_all";
      col.dtype = Dtype::Numeric;
      break;
    case MissCountMode::Any:
      col.name = "any_miss_all";
      col.dtype = Dtype::Text;
      break;
  }
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    const std::size_t nm = detail::row_n_miss(table, r);
    switch (mode) {
      case MissCountMode::N:
        col.cells.push_back(Cell::integer(static_cast<std::int64_t>(nm)));
        break;
      case MissCountMode::Proportion:
        col.cells.push_back(Cell::number(
            static_cast<double>(nm) / static_cast<double>(table.n_cols())));
        break;
      case MissCountMode::Any:
        col.cells.push_back(Cell::text(nm > 0 ? "missing" : "complete"));
        break;
    }
  }
  return table.with_column(std::move(col));
}

// Append an any_missing label column driven by the shadow, so it keeps
// identifying originally-missing rows after imputation.
inline NabularTable add_label_shadow(const NabularTable& nab) {
  Column col{"any_missing", Dtype::Text, {}};
  col.cells.reserve(nab.n_rows());
  for (std::size_t r = 0; r < nab.n_rows(); ++r)
    col.cells.push_back(
        Cell::text(nab.row_has_shadow_missing(r) ? "Missing" : "Not Missing"));
  NabularTable out = nab;
  out.data = nab.data.with_column(std::move(col));
  return out;
}

// ---------------------------------------------------------------- clustering

struct ClusterParams {
  std::size_t k = 2;  // complete-linkage Hamming, lowest-index tie break
};

namespace detail {

inline std::vector<std::vector<bool>> missingness_rows(const Table& t) {
  std::vector<std::vector<bool>> rows(t.n_rows(),
                                      std::vector<bool>(t.n_cols()));
  for (std::size_t r = 0; r < t.n_rows(); ++r)
    for (std::size_t c = 0; c < t.n_cols(); ++c)
      rows[r][c] = t.at(r, c).is_missing();
  return rows;
}

inline std::size_t hamming(const std::vector<bool>& a,
                           const std::vector<bool>& b) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) ++d;
  return d;
}

// Agglomerative complete-linkage clustering over precomputed pairwise
// distances. Ties are broken by the smallest (min member, then max member)
// pair. Returns the full merge sequence so callers can cut at any k or walk
// the dendrogram for leaf order.
struct HclustResult {
  // clusters_at_k[i] = member rows of cluster i when cut at the requested k,
  // ordered by smallest member index
  std::vector<std::vector<std::size_t>> clusters;
  std::vector<std::size_t> leaf_order;  // dendrogram leaves, left to right
};

inline HclustResult hclust_complete(const std::vector<std::vector<bool>>& rows,
                                    std::size_t k) {
  const std::size_t n = rows.size();
  if (k == 0 || k > n) throw validation_error("cluster count out of range");

  struct Node {
    std::vector<std::size_t> members;  // sorted ascending
    std::vector<std::size_t> leaves;   // dendrogram order
  };
  std::vector<Node> active;
  active.reserve(n);
  for (std::size_t i = 0; i < n; ++i) active.push_back({{i}, {i}});

  std::vector<std::vector<std::size_t>> dist(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      dist[i][j] = dist[j][i] = hamming(rows[i], rows[j]);

  auto linkage = [&](const Node& a, const Node& b) {
    std::size_t d = 0;
    for (auto i : a.members)
      for (auto j : b.members) d = std::max(d, dist[i][j]);
    return d;
  };

  HclustResult out;
  while (active.size() > 1) {
    if (active.size() == k) {
      for (const auto& node : active) out.clusters.push_back(node.members);
    }
    std::size_t best_a = 0, best_b = 1;
    std::size_t best_d = linkage(active[0], active[1]);
    for (std::size_t a = 0; a < active.size(); ++a) {
      for (std::size_t b = a + 1; b < active.size(); ++b) {
        const std::size_t d = linkage(active[a], active[b]);
        if (d < best_d) {
          best_d = d;
          best_a = a;
          best_b = b;
        }
        // equal distances keep the earlier (a, b) pair; active is ordered by
        // smallest member, so this is the lowest-row-index tie break
      }
    }
    Node merged;
    const Node& na = active[best_a];
    const Node& nb = active[best_b];
    std::merge(na.members.begin(), na.members.end(), nb.members.begin(),
               nb.members.end(), std::back_inserter(merged.members));
    // child containing the smaller row index goes left
    const Node& left = na.members.front() < nb.members.front() ? na : nb;
    const Node& right = na.members.front() < nb.members.front() ? nb : na;
    merged.leaves = left.leaves;
    merged.leaves.insert(merged.leaves.end(), right.leaves.begin(),
                         right.leaves.end());
    active.erase(active.begin() + best_b);
    active[best_a] = std::move(merged);
    std::sort(active.begin(), active.end(), [](const Node& x, const Node& y) {
      return x.members.front() < y.members.front();
    });
  }
  if (active.size() == k)
    for (const auto& node : active) out.clusters.push_back(node.members);
  out.leaf_order = active.empty() ? std::vector<std::size_t>{}
                                  : active.front().leaves;
  return out;
}

}  // namespace detail

// Dendrogram leaf order of rows clustered by their missingness patterns
// (used by the heatmap builder).
inline std::vector<std::size_t> miss_cluster_leaf_order(const Table& table) {
  if (table.n_rows() == 0) return {};
  return detail::hclust_complete(detail::missingness_rows(table), 1).leaf_order;
}

// Append integer cluster labels 1..k. Deterministic given params; the seed
// is reserved for future stochastic methods and unused by the default.
inline Table add_miss_cluster(const Table& table, const ClusterParams& params,
                              std::uint64_t seed = 0) {
  (void)seed;
  if (params.k > table.n_rows())
    throw validation_error("k exceeds row count");
  auto result =
      detail::hclust_complete(detail::missingness_rows(table), params.k);
  // label clusters by order of their smallest row index
  std::sort(result.clusters.begin(), result.clusters.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  std::vector<std::int64_t> labels(table.n_rows(), 0);
  for (std::size_t i = 0; i < result.clusters.size(); ++i)
    for (auto r : result.clusters[i])
      labels[r] = static_cast<std::int64_t>(i + 1);
  Column col{"miss_cluster_all", Dtype::Integer, {}};
  col.cells.reserve(labels.size());
  for (auto l : labels) col.cells.push_back(Cell::integer(l));
  return table.with_column(std::move(col));
}

}  // namespace nabular
