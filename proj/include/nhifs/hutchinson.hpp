#pragma once

// The Barnsley-Hutchinson operator B(A) = f_1(A) u ... u f_k(A) on grid
// sets, its iteration, and the fixed points reachable by nested iteration.

#include <cstddef>
#include <cstdint>
#include <sstream>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nhifs/convergence.hpp"
#include "nhifs/distance.hpp"
#include "nhifs/error.hpp"
#include "nhifs/grid.hpp"
#include "nhifs/ifs.hpp"

namespace nhifs {

/// Consecutive sub-tolerance steps required before bh_iterate stops.
inline constexpr int kConvergedRun = 3;

struct FixedPointRecord {
  GridSet set;
  double residual = 0.0;  ///< d_H(B(set), set)
  bool forward_invariant = false;  ///< B(set) is a subset of set
  bool fixed_within_tolerance = false;
  ConvergenceStatus status = ConvergenceStatus::BudgetExhausted;
  ConvergenceReport trace;  ///< d_H(B^n(start), set) for each recorded n
};

inline GridSet bh_apply(const IFSystem& s, const GridSet& a) {
  if (!(a.grid().domain() == s.domain()))
    throw IncompatibleGrid("grid set domain differs from the IFS domain");
  const Grid& g = a.grid();
  const Box& dom = g.domain().box();
  std::vector<std::uint8_t> bits(g.size(), 0);
  for (const auto& f : s.maps())
    a.for_each_cell([&](std::size_t c) {
      GridSet::paint(g, bits, interval_image(f, g.cell_box(c)).clamped_to(dom));
    });
  return GridSet::from_bitmap(g, std::move(bits));
}

namespace detail {

inline std::uint64_t bitmap_hash(const GridSet& a) {
  std::uint64_t h = 1469598103934665603ull;
  for (auto b : a.bitmap()) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace detail

/// Iterates B from `start`, tracing d_H between successive iterates.
///
/// Stops with Converged when an iterate repeats exactly or when d_H stays
/// within `tol` for three consecutive steps, with Diverged when the orbit
/// enters an exact cycle of period two or more, and with BudgetExhausted
/// after `steps` applications otherwise.
inline ConvergenceReport bh_iterate(const IFSystem& s, const GridSet& start, std::size_t steps,
                                    double tol) {
  if (steps == 0) throw InvalidArgument("bh_iterate needs at least one step");
  ConvergenceReport report{{}, ConvergenceStatus::BudgetExhausted, start};
  std::unordered_map<std::uint64_t, std::size_t> seen{{detail::bitmap_hash(start), 0}};
  GridSet prev = start;
  int run = 0;
  for (std::size_t n = 1; n <= steps; ++n) {
    GridSet next = bh_apply(s, prev);
    report.steps.push_back(measure_step(n, prev, next));
    const bool same = next == prev;
    run = report.steps.back().hausdorff <= tol ? run + 1 : 0;
    const auto [it, fresh] = seen.emplace(detail::bitmap_hash(next), n);
    report.final_set = std::move(next);
    if (same || run >= kConvergedRun) {
      report.status = ConvergenceStatus::Converged;
      break;
    }
    if (!fresh) {
      report.status = ConvergenceStatus::Diverged;
      break;
    }
    prev = report.final_set;
  }
  return report;
}

inline double fixed_point_residual(const IFSystem& s, const GridSet& a) {
  return hausdorff(bh_apply(s, a), a);
}

/// Classifies `a` as a candidate fixed point of B.
inline FixedPointRecord fixed_point_record(const IFSystem& s, const GridSet& a, double tol) {
  const GridSet image = bh_apply(s, a);
  FixedPointRecord r{a, hausdorff(image, a), image.is_subset_of(a), false,
                     ConvergenceStatus::Converged, {{}, ConvergenceStatus::Converged, a}};
  r.fixed_within_tolerance = r.residual <= tol;
  return r;
}

namespace detail {

// Iterates B from a forward-invariant start; the iterates decrease.
inline FixedPointRecord nested_fixed_point(const IFSystem& s, const GridSet& start,
                                           std::size_t budget, double tol) {
  std::vector<GridSet> chain{start};
  ConvergenceStatus status = ConvergenceStatus::BudgetExhausted;
  int run = 0;
  for (std::size_t n = 1; n <= budget; ++n) {
    GridSet next = bh_apply(s, chain.back());
    const bool same = next == chain.back();
    const double step = same ? 0.0 : hausdorff(next, chain.back());
    chain.push_back(std::move(next));
    run = step <= tol ? run + 1 : 0;
    if (same || run >= kConvergedRun) {
      status = ConvergenceStatus::Converged;
      break;
    }
  }
  auto [limit, trace] = nested_limit(chain);
  FixedPointRecord r = fixed_point_record(s, limit, tol);
  r.trace = std::move(trace);
  r.status = status == ConvergenceStatus::Converged && r.fixed_within_tolerance
                 ? ConvergenceStatus::Converged
                 : ConvergenceStatus::BudgetExhausted;
  r.trace.status = r.status;
  return r;
}

}  // namespace detail

/// Over-approximation of the maximum fixed point X* = intersection of B^n(X),
/// always started from the full domain.
inline FixedPointRecord max_fixed_point(const IFSystem& s, const Grid& grid, std::size_t budget,
                                        double tol) {
  if (!(grid.domain() == s.domain())) throw IncompatibleGrid("grid domain differs from the IFS domain");
  return detail::nested_fixed_point(s, GridSet::full(grid), budget, tol);
}

/// A* = intersection of B^n(A) for a forward-invariant A (B(A) within A).
inline FixedPointRecord a_star(const IFSystem& s, const GridSet& a, std::size_t budget, double tol) {
  const GridSet image = bh_apply(s, a);
  if (auto witness = image.first_cell_not_in(a)) {
    std::ostringstream os;
    os << "B(A) is not contained in A: cell " << *witness << " (center "
       << a.grid().center(*witness)[0];
    if (a.grid().dimension() == 2) os << ", " << a.grid().center(*witness)[1];
    os << ") lies in B(A) only";
    throw PreconditionFailed(os.str());
  }
  return detail::nested_fixed_point(s, a, budget, tol);
}

}  // namespace nhifs
