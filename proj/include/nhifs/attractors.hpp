#pragma once

// Executable checks for semifractals, Conley attractors, stability and the
// global-attractor equivalences. Every check returns a report whose verdict
// is relative to the budget it was given; line() renders it as
//     name: Verdict key=value ...

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nhifs/distance.hpp"
#include "nhifs/error.hpp"
#include "nhifs/grid.hpp"
#include "nhifs/hutchinson.hpp"
#include "nhifs/ifs.hpp"
#include "nhifs/symbolic.hpp"
#include "nhifs/word.hpp"

namespace nhifs {

namespace detail {

// Calls visit(n, B^n(start)) for n = 0, 1, ..., steps. Stops after the
// first n whose iterate equals its predecessor (all later iterates are the
// same set) or when visit returns false. Returns the last n visited.
template <class Visit>
std::size_t walk_orbit(const IFSystem& s, GridSet a, std::size_t steps, Visit&& visit) {
  if (!visit(std::size_t{0}, a)) return 0;
  for (std::size_t n = 1; n <= steps; ++n) {
    GridSet b = bh_apply(s, a);
    if (b == a) return n - 1;
    a = std::move(b);
    if (!visit(n, a)) return n;
  }
  return steps;
}

inline GridSet iterate_exact(const IFSystem& s, const GridSet& start, std::size_t steps) {
  GridSet last = start;
  walk_orbit(s, start, steps, [&](std::size_t, const GridSet& a) {
    last = a;
    return true;
  });
  return last;
}

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

inline std::string point_text(const Point& p) {
  std::string out = fmt(p[0]);
  if (p.dim == 2) out += "," + fmt(p[1]);
  return out;
}

// A random set of 1..max_cells cells drawn from `pool`.
inline GridSet random_subset(const Grid& g, const std::vector<std::size_t>& pool, CounterRng& rng,
                             std::size_t max_cells = 8) {
  const std::size_t n = 1 + rng.below(std::min(max_cells, pool.size()));
  std::vector<std::size_t> picked;
  for (std::size_t i = 0; i < n; ++i) picked.push_back(pool[rng.below(pool.size())]);
  return GridSet::from_cells(g, picked);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Minimality of the semifractal among fixed points.

struct MinimumViolation {
  std::size_t candidate = 0;
  std::size_t cell = 0;
  Point center;
};

struct SfMinimumReport {
  bool holds = true;
  std::size_t accepted = 0;
  std::vector<std::size_t> rejected;  ///< candidates whose residual exceeds tol
  std::vector<MinimumViolation> violations;

  std::string line() const {
    std::string out = std::string("sf_minimum: ") + (holds ? "Holds" : "Fails") +
                      " candidates=" + std::to_string(accepted) +
                      " rejected=" + std::to_string(rejected.size());
    if (!violations.empty())
      out += " witness_candidate=" + std::to_string(violations.front().candidate) +
             " witness=" + detail::point_text(violations.front().center);
    return out;
  }
};

/// The semifractal must sit inside every fixed point, up to two cells.
/// Candidates with residual above tol are not fixed points and are set aside.
inline SfMinimumReport check_sf_minimum(const IFSystem& s, const GridSet& semifractal,
                                        const std::vector<FixedPointRecord>& candidates, double tol) {
  SfMinimumReport r;
  const double margin = 2.0 * semifractal.grid().tolerance();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& c = candidates[i];
    require_compatible(semifractal.grid(), c.set.grid());
    if (fixed_point_residual(s, c.set) > tol) {
      r.rejected.push_back(i);
      continue;
    }
    ++r.accepted;
    if (auto cell = semifractal.first_cell_not_in(dilate(c.set, margin))) {
      r.violations.push_back({i, *cell, semifractal.grid().center(*cell)});
      r.holds = false;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Attraction of compact subsets of the semifractal.

struct SfAttractionReport {
  bool holds = true;
  double threshold = 0.0;
  std::vector<double> final_distances;

  std::string line() const {
    const double worst = final_distances.empty()
                             ? 0.0
                             : *std::max_element(final_distances.begin(), final_distances.end());
    return std::string("sf_attraction: ") + (holds ? "Holds" : "Fails") +
           " trials=" + std::to_string(final_distances.size()) + " worst=" + detail::fmt(worst) +
           " threshold=" + detail::fmt(threshold);
  }
};

/// Iterates B for n steps from `trials` random subsets of the semifractal;
/// each must end within tol + 2 cells of it.
inline SfAttractionReport check_sf_attraction(const IFSystem& s, const GridSet& semifractal,
                                              std::size_t trials, std::size_t n, double tol,
                                              std::uint64_t seed = 1) {
  SfAttractionReport r;
  r.threshold = tol + 2.0 * semifractal.grid().tolerance();
  CounterRng rng(seed);
  const auto pool = semifractal.cells();
  for (std::size_t t = 0; t < trials; ++t) {
    const GridSet k = detail::random_subset(semifractal.grid(), pool, rng);
    const double d = hausdorff(detail::iterate_exact(s, k, n), semifractal);
    r.final_distances.push_back(d);
    r.holds = r.holds && d <= r.threshold;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Forward one-sided attraction of arbitrary compact sets.

struct LemmaDistaReport {
  bool holds = false;
  std::vector<double> forward;   ///< one_sided(semifractal, B^n(K))
  std::vector<double> backward;  ///< one_sided(B^n(K), semifractal); never asserted
  std::optional<std::size_t> threshold;  ///< first n after which forward stays <= tol

  /// Value at step n; iterates past the recorded trace repeat the last set.
  double forward_at(std::size_t n) const { return forward[std::min(n, forward.size() - 1)]; }
  double backward_at(std::size_t n) const { return backward[std::min(n, backward.size() - 1)]; }

  std::string line() const {
    std::string out = std::string("lemma_dista: ") + (holds ? "Holds" : "UndeterminedAtBudget");
    if (threshold) out += " threshold=" + std::to_string(*threshold);
    out += " forward=" + detail::fmt(forward.back()) + " backward=" + detail::fmt(backward.back());
    return out;
  }
};

/// Traces both one-sided distances between the semifractal and B^n(K) for
/// an arbitrary K. Only the forward side is required to vanish.
inline LemmaDistaReport check_lemma_dista(const IFSystem& s, const GridSet& semifractal,
                                          const GridSet& k, std::size_t n, double tol) {
  require_compatible(semifractal.grid(), k.grid());
  LemmaDistaReport r;
  detail::walk_orbit(s, k, n, [&](std::size_t, const GridSet& a) {
    r.forward.push_back(one_sided(semifractal, a));
    r.backward.push_back(one_sided(a, semifractal));
    return true;
  });
  for (std::size_t i = r.forward.size(); i-- > 0 && r.forward[i] <= tol;) r.threshold = i;
  r.holds = r.threshold.has_value();
  return r;
}

// ---------------------------------------------------------------------------
// Conley attractors.

enum class ConleyVerdict { HoldsAtBudget, FailsWithWitness, UndeterminedAtBudget };

inline std::string_view to_string(ConleyVerdict v) {
  switch (v) {
    case ConleyVerdict::HoldsAtBudget: return "HoldsAtBudget";
    case ConleyVerdict::FailsWithWitness: return "FailsWithWitness";
    case ConleyVerdict::UndeterminedAtBudget: return "UndeterminedAtBudget";
  }
  return "?";
}

struct ConleyWitness {
  std::size_t cell = 0;
  Point center;
  /// Distance from the witness cell to A at each recorded step.
  std::vector<double> distance_trace;
};

struct ConleyReport {
  ConleyVerdict verdict = ConleyVerdict::UndeterminedAtBudget;
  double neighborhood = 0.0;
  std::vector<double> trace;  ///< d_H(B^n(U), A)
  std::optional<ConleyWitness> witness;

  std::string line() const {
    std::string out = "conley: " + std::string(to_string(verdict)) +
                      " eps=" + detail::fmt(neighborhood) + " final=" + detail::fmt(trace.back());
    if (witness)
      out += " witness=" + detail::point_text(witness->center) +
             " distance=" + detail::fmt(witness->distance_trace.front());
    return out;
  }
};

/// Iterates B from the closed eps-neighborhood U of A. Holds when
/// B^n(U) reaches A within tol; fails when some cell farther than tol from
/// A survives in every iterate (its distance to A then never shrinks).
inline ConleyReport check_conley(const IFSystem& s, const GridSet& a, double eps_neighborhood,
                                 std::size_t n, double tol) {
  const Grid& g = a.grid();
  if (eps_neighborhood < 2.0 * g.tolerance())
    throw InvalidArgument("Conley neighborhood must be at least two cells wide");
  ConleyReport r;
  r.neighborhood = eps_neighborhood;
  const auto field = distance_field(a);
  std::vector<std::uint8_t> persistent;
  detail::walk_orbit(s, dilate(a, eps_neighborhood), n, [&](std::size_t, const GridSet& it) {
    r.trace.push_back(hausdorff(it, a));
    if (persistent.empty()) {
      persistent.assign(it.bitmap().begin(), it.bitmap().end());
    } else {
      for (std::size_t c = 0; c < persistent.size(); ++c) persistent[c] &= it.bitmap()[c];
    }
    return true;
  });
  if (r.trace.back() <= tol) {
    r.verdict = ConleyVerdict::HoldsAtBudget;
    return r;
  }
  std::optional<std::size_t> best;
  for (std::size_t c = 0; c < persistent.size(); ++c)
    if (persistent[c] && field[c] > tol && (!best || field[c] > field[*best])) best = c;
  if (best) {
    r.verdict = ConleyVerdict::FailsWithWitness;
    r.witness = ConleyWitness{*best, g.center(*best),
                              std::vector<double>(r.trace.size(), field[*best])};
  }
  return r;
}

// ---------------------------------------------------------------------------
// Lyapunov stability.

enum class StabilityVerdict { StableWitness, UndeterminedAtBudget };

inline std::string_view to_string(StabilityVerdict v) {
  return v == StabilityVerdict::StableWitness ? "StableWitness" : "UndeterminedAtBudget";
}

struct StabilityReport {
  StabilityVerdict verdict = StabilityVerdict::UndeterminedAtBudget;
  double v_eps = 0.0;
  double v0_eps = 0.0;  ///< radius of the witness neighborhood V0
  std::size_t steps_checked = 0;

  std::string line() const {
    std::string out = "stability: " + std::string(to_string(verdict)) + " V_eps=" + detail::fmt(v_eps);
    if (verdict == StabilityVerdict::StableWitness) out += " V0_eps=" + detail::fmt(v0_eps);
    return out;
  }
};

/// Searches V0 = dilate(K, V_eps / 2^j), j = 0..shrink_steps, with
/// B^n(V0) inside V = dilate(K, V_eps) for n = 0..budget. A tol of zero
/// means two cells.
inline StabilityReport check_stability(const IFSystem& s, const GridSet& k, double v_eps,
                                       std::size_t budget, std::size_t shrink_steps = 8,
                                       double tol = 0.0) {
  const Grid& g = k.grid();
  if (tol <= 0.0) tol = 2.0 * g.tolerance();
  if (fixed_point_residual(s, k) > tol)
    throw PreconditionFailed("stability needs K fixed within tolerance");
  double min_width = g.cell_width(0);
  if (g.dimension() == 2) min_width = std::min(min_width, g.cell_width(1));
  if (v_eps < min_width) throw InvalidArgument("V_eps must be at least one cell wide");

  StabilityReport r;
  r.v_eps = v_eps;
  const GridSet v = dilate(k, v_eps);
  double radius = v_eps;
  for (std::size_t j = 0; j <= shrink_steps && radius >= min_width; ++j, radius /= 2.0) {
    bool inside = true;
    const std::size_t last = detail::walk_orbit(s, dilate(k, radius), budget,
                                                [&](std::size_t, const GridSet& it) {
                                                  inside = it.is_subset_of(v);
                                                  return inside;
                                                });
    r.steps_checked = last;
    if (inside) {
      r.verdict = StabilityVerdict::StableWitness;
      r.v0_eps = radius;
      return r;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Global attractor equivalences.

enum class EquivalenceVerdict { BothHold, BothFail, Inconsistent };

inline std::string_view to_string(EquivalenceVerdict v) {
  switch (v) {
    case EquivalenceVerdict::BothHold: return "BothHold";
    case EquivalenceVerdict::BothFail: return "BothFail";
    case EquivalenceVerdict::Inconsistent: return "Inconsistent";
  }
  return "?";
}

struct EquivalenceBudget {
  std::size_t steps = 200;     ///< BH iterations per run
  std::size_t max_len = 16;    ///< word length for the certified seed
  std::size_t trials = 5;      ///< random compact sets
  std::uint64_t seed = 1;
};

struct GlobalEquivalenceReport {
  EquivalenceVerdict verdict = EquivalenceVerdict::Inconsistent;
  bool semifractal_is_max = false;  ///< d_H(semifractal, X*) <= tol
  bool globally_attracting = false;  ///< every random set converges to X*
  double semifractal_to_max = 0.0;
  std::vector<double> random_distances;
  CertifiedTargetPoint seed;
  GridSet semifractal;
  GridSet max_fixed;

  std::string line() const {
    const double worst = random_distances.empty()
                             ? 0.0
                             : *std::max_element(random_distances.begin(), random_distances.end());
    return "global_equivalence: " + std::string(to_string(verdict)) +
           " sf_to_max=" + detail::fmt(semifractal_to_max) + " worst_random=" + detail::fmt(worst);
  }
};

/// Compares "the semifractal is the maximum fixed point" against "B is
/// globally attracting" at budget. The two must agree; a mixed outcome is
/// reported as Inconsistent. Throws NoCertificate when no word certifies.
inline GlobalEquivalenceReport check_global_equivalences(const IFSystem& s, const Grid& grid,
                                                         const EquivalenceBudget& budget, double tol) {
  const auto sample = target_sample(s, grid, budget.max_len, tol, 1);
  if (sample.empty())
    throw NoCertificate("no word of length <= " + std::to_string(budget.max_len) +
                        " certifies: S_wh empty at budget");
  const GridSet semifractal = semifractal_approx(s, sample.front(), grid, budget.steps, tol).final_set;
  const GridSet xstar = max_fixed_point(s, grid, budget.steps, tol).set;

  GlobalEquivalenceReport r{EquivalenceVerdict::Inconsistent, false, false, 0.0, {}, sample.front(),
                            semifractal, xstar};
  r.semifractal_to_max = hausdorff(semifractal, xstar);
  r.semifractal_is_max = r.semifractal_to_max <= tol;

  CounterRng rng(budget.seed);
  std::vector<std::size_t> everywhere(grid.size());
  for (std::size_t c = 0; c < everywhere.size(); ++c) everywhere[c] = c;
  r.globally_attracting = true;
  for (std::size_t t = 0; t < budget.trials; ++t) {
    const GridSet k = detail::random_subset(grid, everywhere, rng);
    const double d = hausdorff(detail::iterate_exact(s, k, budget.steps), xstar);
    r.random_distances.push_back(d);
    r.globally_attracting = r.globally_attracting && d <= tol;
  }
  if (r.semifractal_is_max == r.globally_attracting)
    r.verdict = r.semifractal_is_max ? EquivalenceVerdict::BothHold : EquivalenceVerdict::BothFail;
  return r;
}

}  // namespace nhifs
