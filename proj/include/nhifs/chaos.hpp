#pragma once

// The chaos game: orbits x_{n+1} = f_{w_n}(x_n), their tail sets, and the
// check that tails of a disjunctive orbit approach the semifractal.
//
// CHAOS ORDER. Symbol n is applied at step n, so after the word
// w_0 ... w_{n-1} the point is f_{w_{n-1}} o ... o f_{w_0}(x): the FIRST
// symbol is applied FIRST. This is the reverse of the coding order used in
// symbolic.hpp.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "nhifs/attractors.hpp"
#include "nhifs/distance.hpp"
#include "nhifs/error.hpp"
#include "nhifs/grid.hpp"
#include "nhifs/ifs.hpp"
#include "nhifs/word.hpp"

namespace nhifs {

/// Orbits longer than this are not stored point by point; use TailRecorder.
inline constexpr std::size_t kMaxStoredOrbit = 1'000'000;

struct OrbitRecord {
  Point start;
  Word symbols;               ///< symbols[n] is applied at step n
  std::vector<Point> points;  ///< points[0] = start, points.size() = symbols.size() + 1
};

inline OrbitRecord chaos_orbit(const IFSystem& s, const Point& x, SymbolStream stream, std::size_t n) {
  if (n > kMaxStoredOrbit) throw InvalidArgument("orbit too long to store; record tails instead");
  if (!s.domain().contains(x)) throw DomainViolation("orbit start outside the IFS domain");
  OrbitRecord r{x, {}, {x}};
  r.points.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const Symbol sym = stream.next();
    r.symbols.push_back(sym);
    r.points.push_back(s.eval(sym, r.points.back()));
  }
  return r;
}

/// Raster of {points[n] : n >= ell}.
inline GridSet tail_set(const OrbitRecord& orbit, std::size_t ell, const Grid& grid) {
  if (ell >= orbit.points.size()) throw InvalidArgument("tail index past the end of the orbit");
  return GridSet::from_points(
      grid, std::span<const Point>(orbit.points).subspan(ell));
}

/// Streams an orbit and keeps, for every cell, the last step at which the
/// orbit visited it. A cell lies in the tail from ell on exactly when its
/// last visit is at or after ell, so every tail set is recoverable.
class TailRecorder {
 public:
  static constexpr std::size_t kNever = std::numeric_limits<std::size_t>::max();

  explicit TailRecorder(Grid grid) : grid_(std::move(grid)), last_(grid_.size(), kNever) {}

  void record(std::size_t step, const Point& p) {
    last_[grid_.cell_of(p)] = step;
    steps_ = std::max(steps_, step + 1);
  }

  /// Number of recorded steps (points).
  std::size_t size() const { return steps_; }
  const Grid& grid() const { return grid_; }

  GridSet tail(std::size_t ell) const {
    if (ell >= steps_) throw InvalidArgument("tail index past the end of the orbit");
    std::vector<std::uint8_t> bits(grid_.size(), 0);
    for (std::size_t c = 0; c < bits.size(); ++c) bits[c] = last_[c] != kNever && last_[c] >= ell;
    return GridSet::from_bitmap(grid_, std::move(bits));
  }

 private:
  Grid grid_;
  std::vector<std::size_t> last_;
  std::size_t steps_ = 0;
};

/// Runs n steps of the chaos game without storing the points.
inline TailRecorder record_tails(const IFSystem& s, const Point& x, SymbolStream stream,
                                 std::size_t n, const Grid& grid) {
  if (!s.domain().contains(x)) throw DomainViolation("orbit start outside the IFS domain");
  TailRecorder rec(grid);
  Point p = x;
  rec.record(0, p);
  for (std::size_t i = 1; i <= n; ++i) {
    p = s.eval(stream.next(), p);
    rec.record(i, p);
  }
  return rec;
}

/// Powers of two below n/2, then n/2.
inline std::vector<std::size_t> default_ell_schedule(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t ell = 1; ell < n / 2; ell *= 2) out.push_back(ell);
  if (n / 2 > 0) out.push_back(n / 2);
  return out;
}

struct ChaosGameReport {
  std::vector<std::pair<std::size_t, double>> trace;  ///< (ell, d_H(tail_ell, semifractal))
  bool converged = false;  ///< final distance <= tol
  bool monotone = false;   ///< non-increasing up to two cells of noise
  bool caveat = false;     ///< run without a stability witness
  TailRecorder tails;

  bool passed() const { return converged && monotone; }
  double final_distance() const { return trace.back().second; }

  std::string line() const {
    std::string out = std::string("chaos_game: ") + (passed() ? "Converges" : "Fails") +
                      " final=" + detail::fmt(final_distance()) +
                      " monotone=" + (monotone ? "yes" : "no");
    if (caveat) out += " caveat=stability-not-witnessed";
    return out;
  }
};

/// Plays the chaos game with the canonical disjunctive stream from x and
/// compares tail sets with the semifractal. Requires a stability witness for
/// the semifractal unless `override_hypothesis` is set, in which case the
/// report carries a caveat.
inline ChaosGameReport verify_chaos_game(const IFSystem& s, const Point& x, std::size_t n,
                                         const GridSet& semifractal, const StabilityReport& stability,
                                         double tol, std::vector<std::size_t> ell_schedule = {},
                                         bool override_hypothesis = false) {
  const bool witnessed = stability.verdict == StabilityVerdict::StableWitness;
  if (!witnessed && !override_hypothesis)
    throw HypothesisUnmet("no stability witness for the semifractal");
  if (n < 2) throw InvalidArgument("orbit needs at least two steps");
  if (ell_schedule.empty()) ell_schedule = default_ell_schedule(n);
  std::sort(ell_schedule.begin(), ell_schedule.end());

  ChaosGameReport r{{}, false, true, !witnessed,
                    record_tails(s, x, SymbolStream::disjunctive(s.size()), n, semifractal.grid())};
  const double noise = 2.0 * semifractal.grid().tolerance();
  for (std::size_t ell : ell_schedule) {
    const double d = hausdorff(r.tails.tail(ell), semifractal);
    if (!r.trace.empty() && d > r.trace.back().second + noise) r.monotone = false;
    r.trace.emplace_back(ell, d);
  }
  r.converged = r.final_distance() <= tol;
  return r;
}

}  // namespace nhifs
