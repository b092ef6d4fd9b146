#pragma once

// Continuous self-maps of a box: affine, piecewise-linear (1D), quadratic
// (1D) and composites. Each supports exact evaluation, an interval
// enclosure of the image of a box, and an upper Lipschitz bound on a box.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nhifs/error.hpp"
#include "nhifs/geometry.hpp"

namespace nhifs {

class MapDescriptor;

/// x -> M x + b, with M stored row-major (only M[0] is used in 1D).
struct Affine {
  int dim = 1;
  std::array<double, 4> matrix{1.0, 0.0, 0.0, 1.0};
  std::array<double, 2> offset{0.0, 0.0};

  static Affine line(double slope, double intercept) {
    return Affine{1, {slope, 0.0, 0.0, 0.0}, {intercept, 0.0}};
  }
  static Affine plane(double a11, double a12, double a21, double a22, double b1, double b2) {
    return Affine{2, {a11, a12, a21, a22}, {b1, b2}};
  }
  friend bool operator==(const Affine&, const Affine&) = default;
};

struct Vertex {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Linear interpolation between vertices with strictly increasing x.
struct PiecewiseLinear1D {
  std::vector<Vertex> vertices;
  friend bool operator==(const PiecewiseLinear1D&, const PiecewiseLinear1D&) = default;
};

/// x -> a x^2 + b x + c.
struct Quadratic1D {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  friend bool operator==(const Quadratic1D&, const Quadratic1D&) = default;
};

/// parts[0] o parts[1] o ... o parts[n-1]: the last part is applied first.
struct Composite {
  std::vector<MapDescriptor> parts;
};

class MapDescriptor {
 public:
  using Variant = std::variant<Affine, PiecewiseLinear1D, Quadratic1D, Composite>;

  MapDescriptor(Affine m) : v_(std::move(m)) {}
  MapDescriptor(PiecewiseLinear1D m) : v_(validated(std::move(m))) {}
  MapDescriptor(Quadratic1D m) : v_(std::move(m)) {}
  MapDescriptor(Composite m) : v_(validated(std::move(m))) {}

  static MapDescriptor identity(int dim) {
    return dim == 1 ? MapDescriptor(Affine::line(1.0, 0.0))
                    : MapDescriptor(Affine::plane(1, 0, 0, 1, 0, 0));
  }

  const Variant& variant() const { return v_; }

  int dimension() const {
    return std::visit(
        [](const auto& m) -> int {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, Affine>) return m.dim;
          else if constexpr (std::is_same_v<T, Composite>) return m.parts.front().dimension();
          else return 1;
        },
        v_);
  }

  friend bool operator==(const MapDescriptor& a, const MapDescriptor& b);

 private:
  static PiecewiseLinear1D validated(PiecewiseLinear1D m) {
    if (m.vertices.size() < 2) throw InvalidArgument("piecewise-linear map needs two vertices");
    for (std::size_t i = 1; i < m.vertices.size(); ++i)
      if (!(m.vertices[i].x > m.vertices[i - 1].x))
        throw InvalidArgument("piecewise-linear vertex x-coordinates must increase strictly");
    return m;
  }
  static Composite validated(Composite m) {
    if (m.parts.empty()) throw InvalidArgument("composite map needs at least one part");
    const int d = m.parts.front().dimension();
    for (const auto& p : m.parts)
      if (p.dimension() != d) throw InvalidArgument("composite parts differ in dimension");
    return m;
  }

  Variant v_;
};

inline bool operator==(const Composite& a, const Composite& b) { return a.parts == b.parts; }
inline bool operator==(const MapDescriptor& a, const MapDescriptor& b) { return a.v_ == b.v_; }

namespace detail {

inline double pwl_value(const PiecewiseLinear1D& m, double x) {
  const auto& v = m.vertices;
  const double span = v.back().x - v.front().x;
  const double slack = 1e-12 * span;
  if (x < v.front().x - slack || x > v.back().x + slack)
    throw DomainViolation("point outside the piecewise-linear map's range");
  x = std::clamp(x, v.front().x, v.back().x);
  auto it = std::upper_bound(v.begin(), v.end(), x, [](double t, const Vertex& w) { return t < w.x; });
  if (it == v.end()) return v.back().y;
  if (it == v.begin()) return v.front().y;
  const Vertex& r = *it;
  const Vertex& l = *(it - 1);
  if (x == l.x) return l.y;
  return l.y + (r.y - l.y) * ((x - l.x) / (r.x - l.x));
}

inline double quad_value(const Quadratic1D& q, double x) { return (q.a * x + q.b) * x + q.c; }

}  // namespace detail

/// Exact evaluation. Composite applies its parts right to left.
inline Point eval(const MapDescriptor& f, const Point& p) {
  return std::visit(
      [&](const auto& m) -> Point {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Affine>) {
          if (m.dim == 1) return Point::of(m.matrix[0] * p[0] + m.offset[0]);
          return Point::of(m.matrix[0] * p[0] + m.matrix[1] * p[1] + m.offset[0],
                           m.matrix[2] * p[0] + m.matrix[3] * p[1] + m.offset[1]);
        } else if constexpr (std::is_same_v<T, PiecewiseLinear1D>) {
          return Point::of(detail::pwl_value(m, p[0]));
        } else if constexpr (std::is_same_v<T, Quadratic1D>) {
          return Point::of(detail::quad_value(m, p[0]));
        } else {
          Point q = p;
          for (auto it = m.parts.rbegin(); it != m.parts.rend(); ++it) q = eval(*it, q);
          return q;
        }
      },
      f.variant());
}

inline double eval(const MapDescriptor& f, double x) { return eval(f, Point::of(x))[0]; }

/// A box containing f(box): tight for affine, piecewise-linear and
/// quadratic maps; composites chain the enclosures.
inline Box interval_image(const MapDescriptor& f, const Box& box) {
  return std::visit(
      [&](const auto& m) -> Box {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Affine>) {
          Box out{m.dim, {}};
          for (int r = 0; r < m.dim; ++r) {
            double lo = m.offset[static_cast<std::size_t>(r)];
            double hi = lo;
            for (int c = 0; c < m.dim; ++c) {
              const double a = m.matrix[static_cast<std::size_t>(r * 2 + c)];
              const double u = a * box[c].lo;
              const double w = a * box[c].hi;
              lo += std::min(u, w);
              hi += std::max(u, w);
            }
            out[r] = {lo, hi};
          }
          return out;
        } else if constexpr (std::is_same_v<T, PiecewiseLinear1D>) {
          const double a = detail::pwl_value(m, box[0].lo);
          const double b = detail::pwl_value(m, box[0].hi);
          Interval iv{std::min(a, b), std::max(a, b)};
          for (const auto& v : m.vertices)
            if (v.x > box[0].lo && v.x < box[0].hi) iv = hull(iv, {v.y, v.y});
          return Box::of(iv);
        } else if constexpr (std::is_same_v<T, Quadratic1D>) {
          const double a = detail::quad_value(m, box[0].lo);
          const double b = detail::quad_value(m, box[0].hi);
          Interval iv{std::min(a, b), std::max(a, b)};
          if (m.a != 0.0) {
            const double xc = -m.b / (2.0 * m.a);
            if (xc > box[0].lo && xc < box[0].hi) {
              const double yc = detail::quad_value(m, xc);
              iv = hull(iv, {yc, yc});
            }
          }
          return Box::of(iv);
        } else {
          Box b = box;
          for (auto it = m.parts.rbegin(); it != m.parts.rend(); ++it) b = interval_image(*it, b);
          return b;
        }
      },
      f.variant());
}

namespace detail {

inline double operator_norm(const Affine& m) {
  if (m.dim == 1) return std::abs(m.matrix[0]);
  // Largest singular value of a 2x2 matrix.
  const double a = m.matrix[0], b = m.matrix[1], c = m.matrix[2], d = m.matrix[3];
  const double s1 = a * a + b * b + c * c + d * d;
  const double det = a * d - b * c;
  const double disc = std::sqrt(std::max(0.0, s1 * s1 - 4.0 * det * det));
  return std::sqrt(0.5 * (s1 + disc));
}

// Lipschitz bound of a composite along one chain of enclosures.
inline double chained_bound(const Composite& m, Box b);

inline constexpr std::size_t kCompositeSubdivisions = 512;

}  // namespace detail

/// Upper bound for the Lipschitz constant of f restricted to `box`.
///
/// For composites the bound is the product of the part bounds along the
/// chain of enclosures; in 1D the box is first cut into equal slices and
/// the worst slice is returned, which keeps the bound close to the largest
/// slope product actually realised.
inline double lipschitz_bound(const MapDescriptor& f, const Box& box) {
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Affine>) {
          return detail::operator_norm(m);
        } else if constexpr (std::is_same_v<T, PiecewiseLinear1D>) {
          const double lo = box[0].lo, hi = box[0].hi;
          detail::pwl_value(m, lo);
          detail::pwl_value(m, hi);
          double best = 0.0;
          for (std::size_t i = 1; i < m.vertices.size(); ++i) {
            const auto& l = m.vertices[i - 1];
            const auto& r = m.vertices[i];
            const bool overlaps = lo < hi ? (l.x < hi && r.x > lo) : (l.x <= lo && lo <= r.x);
            if (overlaps) best = std::max(best, std::abs((r.y - l.y) / (r.x - l.x)));
          }
          return best;
        } else if constexpr (std::is_same_v<T, Quadratic1D>) {
          return std::max(std::abs(2.0 * m.a * box[0].lo + m.b),
                          std::abs(2.0 * m.a * box[0].hi + m.b));
        } else {
          if (f.dimension() != 1 || box[0].width() == 0.0) return detail::chained_bound(m, box);
          const double lo = box[0].lo;
          const double w = box[0].width() / static_cast<double>(detail::kCompositeSubdivisions);
          double best = 0.0;
          for (std::size_t s = 0; s < detail::kCompositeSubdivisions; ++s) {
            const double a = lo + w * static_cast<double>(s);
            const double b = s + 1 == detail::kCompositeSubdivisions ? box[0].hi : a + w;
            best = std::max(best, detail::chained_bound(m, Box::of({a, b})));
          }
          return best;
        }
      },
      f.variant());
}

inline double detail::chained_bound(const Composite& m, Box b) {
  double product = 1.0;
  for (auto it = m.parts.rbegin(); it != m.parts.rend(); ++it) {
    product *= lipschitz_bound(*it, b);
    b = interval_image(*it, b);
  }
  return product;
}

inline MapDescriptor compose(std::vector<MapDescriptor> parts) {
  return MapDescriptor(Composite{std::move(parts)});
}

}  // namespace nhifs
