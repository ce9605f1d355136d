#pragma once

// Synthetic amputation: introduce missing cells into a column under an
// MCAR / MAR / MNAR model, deterministically given a seed.

#include <cstdint>
#include <string>

#include "nabular/random.hpp"
#include "nabular/table.hpp"

namespace nabular {

struct MechanismSpec {
  enum class Kind { MCAR, MAR, MNAR };
  Kind kind = Kind::MCAR;
  double psi = 0.0;        // base missingness probability
  std::string target;      // column made missing
  std::string driver;      // MAR only: observed column driving missingness
  double threshold = 0.0;  // MAR/MNAR step location
  double boost = 0.0;      // probability increment above the threshold
};

// MCAR: each target cell missing with probability psi.
// MAR:  probability psi + boost where driver > threshold, else psi.
// MNAR: probability psi + boost where the target's own value > threshold.
inline Table amputate(const Table& table, const MechanismSpec& spec,
                      std::uint64_t seed) {
  if (spec.psi < 0 || spec.psi > 1 || spec.boost < 0 ||
      spec.psi + spec.boost > 1)
    throw validation_error("amputate: probabilities must stay in [0, 1]");
  const std::size_t target_idx = table.column_index(spec.target);
  const Column& target = table.column(target_idx);
  if (!target.is_numeric())
    throw type_error("amputate target must be numeric: " + spec.target);

  const Column* driver = nullptr;
  if (spec.kind == MechanismSpec::Kind::MAR) {
    if (spec.driver == spec.target)
      throw validation_error("MAR driver must differ from target");
    driver = &table.column(spec.driver);
    if (driver->n_miss() > 0)
      throw validation_error("MAR driver must be fully observed: " +
                             spec.driver);
  }

  UniformStream stream(seed);
  std::vector<Column> cols = table.columns();
  auto& cells = cols[target_idx].cells;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    if (cells[r].is_missing()) continue;
    double p = spec.psi;
    switch (spec.kind) {
      case MechanismSpec::Kind::MCAR:
        break;
      case MechanismSpec::Kind::MAR:
        if (driver->cells[r].as_number() > spec.threshold) p += spec.boost;
        break;
      case MechanismSpec::Kind::MNAR:
        if (cells[r].as_number() > spec.threshold) p += spec.boost;
        break;
    }
    if (stream.at(r) < p) cells[r] = Cell::missing();
  }
  return Table(std::move(cols));
}

}  // namespace nabular
