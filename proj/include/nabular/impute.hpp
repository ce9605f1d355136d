#pragma once

// Imputation for exploration: below-range with jitter, mean/median, and
// single imputation from an ordinary least squares fit, with nabular
// tracking (the shadow stays untouched and identifies imputed cells).

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "nabular/random.hpp"
#include "nabular/replace.hpp"
#include "nabular/shadow.hpp"
#include "nabular/table.hpp"

namespace nabular {

namespace detail {

// Imputed values are generally fractional, so Integer columns are promoted
// to Numeric before filling.
inline Column promote_to_numeric(const Column& col) {
  if (col.dtype != Dtype::Integer) {
    if (!col.is_numeric())
      throw type_error("imputation requires a numeric column: " + col.name);
    return col;
  }
  Column out{col.name, Dtype::Numeric, {}};
  out.cells.reserve(col.size());
  for (const auto& c : col.cells)
    out.cells.push_back(c.is_missing() ? Cell::missing()
                                       : Cell::number(c.as_number()));
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------- location

enum class LocationStatistic { Mean, Median };

inline Table impute_location(const Table& target, const Scope& scope,
                             LocationStatistic statistic) {
  std::vector<Column> cols = target.columns();
  for (const auto& name : resolve_scope(target, scope)) {
    auto& col = cols[target.column_index(name)];
    const StatsRow stats = observed_stats(col);
    const double fill =
        statistic == LocationStatistic::Mean ? stats.mean : stats.median;
    col = detail::promote_to_numeric(col);
    for (auto& cell : col.cells)
      if (cell.is_missing()) cell = Cell::number(fill);
  }
  return Table(std::move(cols));
}

// ---------------------------------------------------------------- below

struct JitterParams {
  bool enabled = false;
  double magnitude = 0.05;  // fraction of the below-range shift
  std::uint64_t seed = 0;
};

// Fill missings with observed_min - shift_fraction * observed_range
// (range 0 falls back to a shift of 1), optionally jittered downward by a
// seeded uniform amount. Every imputed value lands strictly below the
// observed minimum.
inline Table impute_below(const Table& target, const Scope& scope,
                          double shift_fraction = 0.1,
                          const JitterParams& jitter = {}) {
  if (shift_fraction <= 0)
    throw validation_error("shift_fraction must be positive");
  UniformStream stream(jitter.seed);
  std::vector<Column> cols = target.columns();
  for (const auto& name : resolve_scope(target, scope)) {
    const std::size_t ci = target.column_index(name);
    auto& col = cols[ci];
    const StatsRow stats = observed_stats(col);
    const double range = stats.max - stats.min;
    const double shift = range == 0 ? 1.0 : shift_fraction * range;
    const double base = stats.min - shift;
    const double band = jitter.enabled ? jitter.magnitude * shift_fraction * range
                                       : 0.0;
    col = detail::promote_to_numeric(col);
    for (std::size_t r = 0; r < col.size(); ++r) {
      if (!col.cells[r].is_missing()) continue;
      const double u = band > 0 ? band * stream.at(ci * target.n_rows() + r)
                                : 0.0;
      col.cells[r] = Cell::number(base - u);
    }
  }
  return Table(std::move(cols));
}

// ---------------------------------------------------------------- OLS

struct LinearModelSpec {
  std::string response;
  std::vector<std::string> predictors;
  bool include_intercept = true;
};

struct FitResult {
  std::vector<double> coefficients;  // intercept first when included
  std::size_t n_used = 0;

  double predict(const std::vector<double>& x, bool intercept) const {
    std::size_t i = 0;
    double y = 0;
    if (intercept) y = coefficients[i++];
    for (double v : x) y += coefficients[i++] * v;
    return y;
  }
};

namespace detail {

// Least squares via Householder QR; A is row-major n x p, n >= p.
inline std::vector<double> qr_solve(std::vector<double> a, std::size_t n,
                                    std::size_t p, std::vector<double> y,
                                    const std::vector<std::string>& col_names) {
  auto A = [&](std::size_t i, std::size_t j) -> double& { return a[i * p + j]; };
  for (std::size_t k = 0; k < p; ++k) {
    double norm = 0;
    for (std::size_t i = k; i < n; ++i) norm += A(i, k) * A(i, k);
    norm = std::sqrt(norm);
    if (norm == 0)
      throw singularity_error("rank-deficient design: column " + col_names[k]);
    const double alpha = A(k, k) >= 0 ? -norm : norm;
    std::vector<double> v(n - k);
    v[0] = A(k, k) - alpha;
    for (std::size_t i = k + 1; i < n; ++i) v[i - k] = A(i, k);
    double vtv = 0;
    for (double x : v) vtv += x * x;
    if (vtv == 0)
      throw singularity_error("rank-deficient design: column " + col_names[k]);
    // apply the reflector to remaining columns and to y
    for (std::size_t j = k; j < p; ++j) {
      double dot = 0;
      for (std::size_t i = k; i < n; ++i) dot += v[i - k] * A(i, j);
      const double f = 2.0 * dot / vtv;
      for (std::size_t i = k; i < n; ++i) A(i, j) -= f * v[i - k];
    }
    double dot = 0;
    for (std::size_t i = k; i < n; ++i) dot += v[i - k] * y[i];
    const double f = 2.0 * dot / vtv;
    for (std::size_t i = k; i < n; ++i) y[i] -= f * v[i - k];
  }
  // rank check against the leading diagonal magnitude
  double max_diag = 0;
  for (std::size_t k = 0; k < p; ++k)
    max_diag = std::max(max_diag, std::abs(A(k, k)));
  std::vector<double> beta(p);
  for (std::size_t k = p; k-- > 0;) {
    if (std::abs(A(k, k)) <= 1e-12 * max_diag)
      throw singularity_error("rank-deficient design: column " + col_names[k]);
    double s = y[k];
    for (std::size_t j = k + 1; j < p; ++j) s -= A(k, j) * beta[j];
    beta[k] = s / A(k, k);
  }
  return beta;
}

}  // namespace detail

inline FitResult fit_ols(const Table& table, const LinearModelSpec& spec) {
  const Column& response = table.column(spec.response);
  if (!response.is_numeric())
    throw type_error("response must be numeric: " + spec.response);
  std::vector<const Column*> preds;
  for (const auto& name : spec.predictors) {
    if (name == spec.response)
      throw validation_error("response cannot be its own predictor");
    const Column& c = table.column(name);
    if (!c.is_numeric())
      throw type_error("predictor must be numeric: " + name);
    preds.push_back(&c);
  }

  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    if (response.cells[r].is_missing()) continue;
    bool ok = true;
    for (const auto* p : preds)
      if (p->cells[r].is_missing()) ok = false;
    if (ok) rows.push_back(r);
  }
  const std::size_t p = preds.size() + (spec.include_intercept ? 1 : 0);
  if (rows.size() < p)
    throw validation_error("too few complete rows to fit: " +
                           std::to_string(rows.size()));

  std::vector<double> a(rows.size() * p), y(rows.size());
  std::vector<std::string> names;
  if (spec.include_intercept) names.push_back("(intercept)");
  names.insert(names.end(), spec.predictors.begin(), spec.predictors.end());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::size_t j = 0;
    if (spec.include_intercept) a[i * p + j++] = 1.0;
    for (const auto* pc : preds)
      a[i * p + j++] = pc->cells[rows[i]].as_number();
    y[i] = response.cells[rows[i]].as_number();
  }
  FitResult fit;
  fit.coefficients = detail::qr_solve(std::move(a), rows.size(), p,
                                      std::move(y), names);
  fit.n_used = rows.size();
  return fit;
}

// ---------------------------------------------------------------- impute_lm

struct LmImputation {
  FitResult fit;
  std::size_t n_imputed = 0;
  std::size_t n_still_missing = 0;  // responses left missing (missing predictors)
};

inline LmImputation impute_lm_inplace(std::vector<Column>& cols,
                                      const Table& view,
                                      const LinearModelSpec& spec) {
  LmImputation result;
  result.fit = fit_ols(view, spec);
  const std::size_t ri = view.column_index(spec.response);
  std::vector<std::size_t> pred_idx;
  for (const auto& n : spec.predictors) pred_idx.push_back(view.column_index(n));

  cols[ri] = detail::promote_to_numeric(cols[ri]);
  auto& cells = cols[ri].cells;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    if (!cells[r].is_missing()) continue;
    std::vector<double> x;
    bool ok = true;
    for (auto pi : pred_idx) {
      const Cell& c = cols[pi].cells[r];
      if (c.is_missing()) {
        ok = false;
        break;
      }
      x.push_back(c.as_number());
    }
    if (!ok) {
      ++result.n_still_missing;
      continue;
    }
    cells[r] = Cell::number(result.fit.predict(x, spec.include_intercept));
    ++result.n_imputed;
  }
  return result;
}

struct TableLmResult {
  Table table;
  LmImputation imputation;
};

struct NabularLmResult {
  NabularTable nabular;
  LmImputation imputation;
};

inline TableLmResult impute_lm(const Table& target,
                               const LinearModelSpec& spec) {
  std::vector<Column> cols = target.columns();
  auto imp = impute_lm_inplace(cols, target, spec);
  return {Table(std::move(cols)), imp};
}

// Nabular input keeps its shadow bit-identical: imputed cells remain
// identifiable through their shadow level.
inline NabularLmResult impute_lm(const NabularTable& target,
                                 const LinearModelSpec& spec) {
  auto r = impute_lm(target.data, spec);
  return {NabularTable{std::move(r.table), target.shadow, target.registry},
          r.imputation};
}

// Nabular wrappers for the exploratory imputations.
inline NabularTable impute_location(const NabularTable& target,
                                    const Scope& scope,
                                    LocationStatistic statistic) {
  return NabularTable{impute_location(target.data, scope, statistic),
                      target.shadow, target.registry};
}

inline NabularTable impute_below(const NabularTable& target, const Scope& scope,
                                 double shift_fraction = 0.1,
                                 const JitterParams& jitter = {}) {
  return NabularTable{impute_below(target.data, scope, shift_fraction, jitter),
                      target.shadow, target.registry};
}

// ------------------------------------------------------ imputed vs observed

struct MissingnessSplitStats {
  StatsRow previously_missing;  // rows whose shadow flags any missingness
  StatsRow observed;
};

inline MissingnessSplitStats summarize_by_missingness(const NabularTable& nab,
                                                      const std::string& var) {
  const Column& col = nab.data.column(var);
  if (col.n_miss() > 0)
    throw validation_error("variable still contains missing values: " + var);
  Column miss_group{var, Dtype::Numeric, {}};
  Column obs_group{var, Dtype::Numeric, {}};
  for (std::size_t r = 0; r < nab.n_rows(); ++r) {
    auto& dst = nab.row_has_shadow_missing(r) ? miss_group : obs_group;
    dst.cells.push_back(Cell::number(col.cells[r].as_number()));
  }
  if (miss_group.cells.empty())
    throw empty_domain_error("no previously-missing rows to summarize");
  return {observed_stats(miss_group), observed_stats(obs_group)};
}

}  // namespace nabular
