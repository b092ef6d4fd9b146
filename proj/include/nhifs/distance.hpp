#pragma once

// Point-to-set and set-to-set distances on grid sets.
//
// All distances are measured between cell centers. The one-sided and
// Hausdorff distances go through an exact Euclidean distance transform
// (separable lower-envelope pass in 2D), so they agree with the naive
// double loop up to rounding.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "nhifs/error.hpp"
#include "nhifs/geometry.hpp"
#include "nhifs/grid.hpp"

namespace nhifs {

namespace detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Squared distance from every cell center to the nearest set cell center.
inline std::vector<double> squared_distance_field_1d(const GridSet& target) {
  const Grid& g = target.grid();
  const std::size_t n = g.cells(0);
  const double h = g.cell_width(0);
  std::vector<double> out(n, kInf);
  const auto bits = target.bitmap();

  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::size_t last = none;
  std::vector<std::size_t> left(n, none);
  for (std::size_t i = 0; i < n; ++i) {
    if (bits[i]) last = i;
    left[i] = last;
  }
  std::size_t next = none;
  for (std::size_t r = n; r-- > 0;) {
    if (bits[r]) next = r;
    std::size_t k = none;
    if (left[r] != none) k = r - left[r];
    if (next != none && (k == none || next - r < k)) k = next - r;
    const double d = static_cast<double>(k) * h;
    out[r] = d * d;
  }
  return out;
}

inline std::vector<double> squared_distance_field_2d(const GridSet& target) {
  const Grid& g = target.grid();
  const std::size_t nx = g.cells(0);
  const std::size_t ny = g.cells(1);
  const double hx = g.cell_width(0);
  const double hy = g.cell_width(1);
  const double hx2 = hx * hx;
  const auto bits = target.bitmap();

  // Column pass: vertical cell offset to the nearest set cell in the column.
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> vert(g.size(), none);
  for (std::size_t i = 0; i < nx; ++i) {
    std::size_t last = none;
    for (std::size_t j = 0; j < ny; ++j) {
      const std::size_t idx = g.index(i, j);
      if (bits[idx]) last = j;
      if (last != none) vert[idx] = j - last;
    }
    last = none;
    for (std::size_t j = ny; j-- > 0;) {
      const std::size_t idx = g.index(i, j);
      if (bits[idx]) last = j;
      if (last != none && (vert[idx] == none || last - j < vert[idx])) vert[idx] = last - j;
    }
  }

  // Row pass: lower envelope of parabolas hx^2 (i - q)^2 + f(q).
  std::vector<double> out(g.size(), kInf);
  std::vector<double> f(nx);
  std::vector<std::size_t> v(nx);
  std::vector<double> z(nx + 1);
  for (std::size_t j = 0; j < ny; ++j) {
    std::size_t k = 0;
    bool started = false;
    for (std::size_t q = 0; q < nx; ++q) {
      const std::size_t off = vert[g.index(q, j)];
      if (off == none) {
        f[q] = kInf;
        continue;
      }
      const double dy = static_cast<double>(off) * hy;
      f[q] = dy * dy;
      if (!started) {
        started = true;
        k = 0;
        v[0] = q;
        z[0] = -kInf;
        z[1] = kInf;
        continue;
      }
      const double qd = static_cast<double>(q);
      auto meet = [&](std::size_t p) {
        const double pd = static_cast<double>(p);
        return ((f[q] + hx2 * qd * qd) - (f[p] + hx2 * pd * pd)) / (2.0 * hx2 * (qd - pd));
      };
      double s = meet(v[k]);
      while (s <= z[k]) {  // z[0] = -inf stops the loop
        --k;
        s = meet(v[k]);
      }
      ++k;
      v[k] = q;
      z[k] = s;
      z[k + 1] = kInf;
    }
    if (!started) continue;
    std::size_t m = 0;
    for (std::size_t i = 0; i < nx; ++i) {
      const double id = static_cast<double>(i);
      while (z[m + 1] < id) ++m;
      const double dx = (id - static_cast<double>(v[m])) * hx;
      out[g.index(i, j)] = dx * dx + f[v[m]];
    }
  }
  return out;
}

}  // namespace detail

/// Distance from every cell center to the nearest center of a cell of `target`.
inline std::vector<double> distance_field(const GridSet& target) {
  auto sq = target.grid().dimension() == 1 ? detail::squared_distance_field_1d(target)
                                           : detail::squared_distance_field_2d(target);
  for (auto& d : sq) d = std::sqrt(d);
  return sq;
}

/// d(p, A): minimum over set cells of the distance from `p` to the cell center.
inline double point_set_distance(const Point& p, const GridSet& a) {
  const Grid& g = a.grid();
  if (!g.domain().contains(p)) throw DomainViolation("point outside the set's domain");
  double best = detail::kInf;
  a.for_each_cell([&](std::size_t c) { best = std::min(best, distance(p, g.center(c))); });
  return best;
}

/// h_s(A, B) = max over cells a of A of d(center(a), B). Not symmetric.
inline double one_sided(const GridSet& a, const GridSet& b) {
  require_compatible(a.grid(), b.grid());
  if (a.is_subset_of(b)) return 0.0;
  const auto field = distance_field(b);
  double worst = 0.0;
  a.for_each_cell([&](std::size_t c) { worst = std::max(worst, field[c]); });
  return worst;
}

inline double hausdorff(const GridSet& a, const GridSet& b) {
  return std::max(one_sided(a, b), one_sided(b, a));
}

/// Closed eps-neighbourhood of `a` (center to center), clipped to the domain.
inline GridSet dilate(const GridSet& a, double eps) {
  const Grid& g = a.grid();
  const double min_width =
      g.dimension() == 1 ? g.cell_width(0) : std::min(g.cell_width(0), g.cell_width(1));
  if (!(eps >= min_width * (1.0 - 1e-12)))
    throw InvalidArgument("dilation radius below one cell width");
  const auto field = distance_field(a);
  const double cut = eps * (1.0 + 1e-12);
  std::vector<std::uint8_t> bits(g.size(), 0);
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = field[i] <= cut ? 1 : 0;
  return GridSet::from_bitmap(g, std::move(bits));
}

/// Outer bound on the diameter: max pairwise center distance plus one cell diagonal.
inline double diameter(const GridSet& a) {
  const Grid& g = a.grid();
  if (g.dimension() == 1) {
    const auto cells = a.cells();
    return static_cast<double>(cells.back() - cells.front()) * g.cell_width(0) +
           g.cell_diagonal();
  }
  // Only row extremes can realise the maximum; take their convex hull.
  struct P {
    double x, y;
  };
  std::vector<P> pts;
  for (std::size_t j = 0; j < g.cells(1); ++j) {
    std::size_t lo = g.cells(0), hi = 0;
    for (std::size_t i = 0; i < g.cells(0); ++i)
      if (a.contains(g.index(i, j))) {
        lo = std::min(lo, i);
        hi = std::max(hi, i);
      }
    if (lo > hi) continue;
    const auto c0 = g.center(g.index(lo, j));
    const auto c1 = g.center(g.index(hi, j));
    pts.push_back({c0[0], c0[1]});
    if (hi != lo) pts.push_back({c1[0], c1[1]});
  }
  std::sort(pts.begin(), pts.end(), [](P p, P q) { return p.x < q.x || (p.x == q.x && p.y < q.y); });
  auto cross = [](P o, P a_, P b) { return (a_.x - o.x) * (b.y - o.y) - (a_.y - o.y) * (b.x - o.x); };
  std::vector<P> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k > 1 ? k - 1 : k);
  double best = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i)
    for (std::size_t j = i + 1; j < hull.size(); ++j)
      best = std::max(best, std::hypot(hull[i].x - hull[j].x, hull[i].y - hull[j].y));
  return best + g.cell_diagonal();
}

}  // namespace nhifs
