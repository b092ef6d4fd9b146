#pragma once

// Points, intervals and axis-aligned boxes in R^1 and R^2.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "nhifs/error.hpp"

namespace nhifs {

struct Point {
  int dim = 1;
  std::array<double, 2> c{};

  static Point of(double x) { return Point{1, {x, 0.0}}; }
  static Point of(double x, double y) { return Point{2, {x, y}}; }

  double operator[](int axis) const { return c[static_cast<std::size_t>(axis)]; }
  double& operator[](int axis) { return c[static_cast<std::size_t>(axis)]; }

  friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(const Point& a, const Point& b) {
  double s = 0.0;
  for (int i = 0; i < a.dim; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x, double slack = 0.0) const {
    return x >= lo - slack && x <= hi + slack;
  }
  bool contains(const Interval& o, double slack = 0.0) const {
    return o.lo >= lo - slack && o.hi <= hi + slack;
  }

  friend bool operator==(const Interval&, const Interval&) = default;
};

inline Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

struct Box {
  int dim = 1;
  std::array<Interval, 2> axis{};

  static Box of(Interval x) { return Box{1, {x, Interval{}}}; }
  static Box of(Interval x, Interval y) { return Box{2, {x, y}}; }
  static Box around(const Point& p) {
    Box b{p.dim, {}};
    for (int i = 0; i < p.dim; ++i) b[i] = {p[i], p[i]};
    return b;
  }

  const Interval& operator[](int i) const { return axis[static_cast<std::size_t>(i)]; }
  Interval& operator[](int i) { return axis[static_cast<std::size_t>(i)]; }

  /// Euclidean length of the diagonal (width in 1D).
  double diameter() const {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += (*this)[i].width() * (*this)[i].width();
    return std::sqrt(s);
  }

  Point center() const {
    Point p{dim, {}};
    for (int i = 0; i < dim; ++i) p[i] = (*this)[i].mid();
    return p;
  }

  Point lower_corner() const {
    Point p{dim, {}};
    for (int i = 0; i < dim; ++i) p[i] = (*this)[i].lo;
    return p;
  }

  bool contains(const Point& p, double slack = 0.0) const {
    for (int i = 0; i < dim; ++i)
      if (!(*this)[i].contains(p[i], slack)) return false;
    return true;
  }

  bool contains(const Box& b, double slack = 0.0) const {
    for (int i = 0; i < dim; ++i)
      if (!(*this)[i].contains(b[i], slack)) return false;
    return true;
  }

  /// Intersection with `outer`, collapsing to the nearest face when disjoint.
  Box clamped_to(const Box& outer) const {
    Box b = *this;
    for (int i = 0; i < dim; ++i) {
      b[i].lo = std::clamp(b[i].lo, outer[i].lo, outer[i].hi);
      b[i].hi = std::clamp(b[i].hi, outer[i].lo, outer[i].hi);
    }
    return b;
  }

  friend bool operator==(const Box& a, const Box& b) {
    if (a.dim != b.dim) return false;
    for (int i = 0; i < a.dim; ++i)
      if (!(a[i] == b[i])) return false;
    return true;
  }
};

/// The compact phase space: a non-degenerate axis-aligned box in R^1 or R^2.
class BoxDomain {
 public:
  BoxDomain(double lower, double upper) : box_(Box::of({lower, upper})) {
    validate();
  }
  BoxDomain(std::array<double, 2> lower, std::array<double, 2> upper)
      : box_(Box::of({lower[0], upper[0]}, {lower[1], upper[1]})) {
    validate();
  }

  static BoxDomain unit_interval() { return BoxDomain(0.0, 1.0); }
  static BoxDomain unit_square() { return BoxDomain({0.0, 0.0}, {1.0, 1.0}); }

  int dimension() const { return box_.dim; }
  double lower(int axis) const { return box_[axis].lo; }
  double upper(int axis) const { return box_[axis].hi; }
  double extent(int axis) const { return box_[axis].width(); }
  const Box& box() const { return box_; }

  /// Relative slack absorbs rounding in map evaluations that land on the boundary.
  double slack() const { return 1e-12 * box_.diameter(); }

  bool contains(const Point& p) const {
    return p.dim == dimension() && box_.contains(p, slack());
  }
  bool contains(const Box& b) const {
    return b.dim == dimension() && box_.contains(b, slack());
  }

  Point clamp(Point p) const {
    for (int i = 0; i < dimension(); ++i) p[i] = std::clamp(p[i], lower(i), upper(i));
    return p;
  }

  friend bool operator==(const BoxDomain& a, const BoxDomain& b) { return a.box_ == b.box_; }

 private:
  void validate() const {
    for (int i = 0; i < box_.dim; ++i) {
      if (!std::isfinite(box_[i].lo) || !std::isfinite(box_[i].hi) ||
          !(box_[i].lo < box_[i].hi))
        throw InvalidArgument("domain axis " + std::to_string(i) +
                              " needs finite lower < upper");
    }
  }

  Box box_;
};

}  // namespace nhifs
