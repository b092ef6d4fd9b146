#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nhifs/distance.hpp"
#include "nhifs/error.hpp"
#include "nhifs/grid.hpp"

namespace nhifs {

enum class ConvergenceStatus { Converged, BudgetExhausted, Diverged };

inline std::string_view to_string(ConvergenceStatus s) {
  switch (s) {
    case ConvergenceStatus::Converged: return "Converged";
    case ConvergenceStatus::BudgetExhausted: return "BudgetExhausted";
    case ConvergenceStatus::Diverged: return "Diverged";
  }
  return "?";
}

/// One traced iterate. `forward` is h_s(previous, current) and `backward`
/// is h_s(current, previous) unless the producing operation says otherwise.
struct ConvergenceStep {
  std::size_t index = 0;
  double hausdorff = 0.0;
  double forward = 0.0;
  double backward = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceStep> steps;
  ConvergenceStatus status = ConvergenceStatus::BudgetExhausted;
  GridSet final_set;

  double last_distance() const { return steps.empty() ? 0.0 : steps.back().hausdorff; }
};

inline ConvergenceStep measure_step(std::size_t index, const GridSet& from, const GridSet& to) {
  const double fwd = one_sided(from, to);
  const double bwd = one_sided(to, from);
  return {index, std::max(fwd, bwd), fwd, bwd};
}

/// Limit of a decreasing family: its last member, with the trace d_H(L_n, L).
inline std::pair<GridSet, ConvergenceReport> nested_limit(const std::vector<GridSet>& sets) {
  if (sets.empty()) throw InvalidArgument("nested_limit needs at least one set");
  for (std::size_t n = 1; n < sets.size(); ++n) {
    require_compatible(sets[n - 1].grid(), sets[n].grid());
    if (!sets[n].is_subset_of(sets[n - 1]))
      throw NotNested(n, "set " + std::to_string(n) + " is not contained in set " +
                             std::to_string(n - 1));
  }
  const GridSet& limit = sets.back();
  ConvergenceReport report{{}, ConvergenceStatus::Converged, limit};
  report.steps.reserve(sets.size());
  for (std::size_t n = 0; n < sets.size(); ++n) report.steps.push_back(measure_step(n, sets[n], limit));
  return {limit, std::move(report)};
}

}  // namespace nhifs
