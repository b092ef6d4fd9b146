#pragma once

// Fixed points of a one-dimensional map, located by sign changes of
// f(x) - x on a sample and refined by bisection.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string_view>
#include <vector>

#include "nhifs/error.hpp"
#include "nhifs/geometry.hpp"
#include "nhifs/map.hpp"

namespace nhifs {

enum class FixedPointKind { Attracting, Repelling, Neutral };

inline std::string_view to_string(FixedPointKind k) {
  switch (k) {
    case FixedPointKind::Attracting: return "attracting";
    case FixedPointKind::Repelling: return "repelling";
    case FixedPointKind::Neutral: return "neutral";
  }
  return "?";
}

struct FixedPoint1D {
  double x = 0.0;
  FixedPointKind kind = FixedPointKind::Neutral;
  double lipschitz = 0.0;   ///< lipschitz_bound on [x - delta, x + delta]
  double expansion = 0.0;   ///< smallest one-sided secant slope at delta
  bool continuum = false;   ///< f(x) = x on a whole sampled interval around x
};

struct FixedPointSearch {
  std::size_t samples = 1 << 16;
  double delta = 1e-6;
};

namespace detail {

inline FixedPoint1D classify_fixed_point(const MapDescriptor& f, const BoxDomain& dom, double x,
                                         double delta) {
  const double lo = std::max(dom.lower(0), x - delta);
  const double hi = std::min(dom.upper(0), x + delta);
  FixedPoint1D p{x, FixedPointKind::Neutral, lipschitz_bound(f, Box::of({lo, hi})), 0.0, false};
  const double fx = eval(f, x);
  double expansion = std::numeric_limits<double>::infinity();
  if (lo < x) expansion = std::min(expansion, std::abs(eval(f, lo) - fx) / (x - lo));
  if (hi > x) expansion = std::min(expansion, std::abs(eval(f, hi) - fx) / (hi - x));
  p.expansion = expansion;
  if (p.lipschitz < 1.0) p.kind = FixedPointKind::Attracting;
  else if (expansion > 1.0) p.kind = FixedPointKind::Repelling;
  return p;
}

}  // namespace detail

/// All fixed points of a 1D self-map of `dom`, in increasing order. A run
/// of samples where f(x) = x exactly is reported once, as a continuum entry
/// at its left end.
inline std::vector<FixedPoint1D> fixed_points_1d(const MapDescriptor& f, const BoxDomain& dom,
                                                 FixedPointSearch opt = {}) {
  if (f.dimension() != 1 || dom.dimension() != 1)
    throw InvalidArgument("fixed_points_1d needs a one-dimensional map");
  if (opt.samples < 2) throw InvalidArgument("need at least two samples");
  const double a = dom.lower(0), b = dom.upper(0);
  auto g = [&](double x) { return eval(f, x) - x; };
  auto xs = [&](std::size_t i) {
    return i + 1 == opt.samples ? b
                                : a + (b - a) * static_cast<double>(i) / static_cast<double>(opt.samples - 1);
  };

  std::vector<FixedPoint1D> out;
  double prev_x = xs(0);
  double prev_g = g(prev_x);
  bool in_zero_run = false;
  std::size_t run_length = 0;
  auto zero_at = [&](double x) {
    if (in_zero_run) {
      ++run_length;
      if (run_length == 2) out.back().continuum = true;
      return;
    }
    out.push_back(detail::classify_fixed_point(f, dom, x, opt.delta));
    in_zero_run = true;
    run_length = 1;
  };
  if (prev_g == 0.0) zero_at(prev_x);
  for (std::size_t i = 1; i < opt.samples; ++i) {
    const double x = xs(i);
    const double gx = g(x);
    if (gx == 0.0) {
      zero_at(x);
    } else {
      in_zero_run = false;
      if (prev_g != 0.0 && (prev_g < 0.0) != (gx < 0.0)) {
        double l = prev_x, r = x;
        const bool left_negative = prev_g < 0.0;
        for (int it = 0; it < 200 && r - l > 0.0; ++it) {
          const double m = 0.5 * (l + r);
          if (m <= l || m >= r) break;
          const double gm = g(m);
          if (gm == 0.0) {
            l = r = m;
            break;
          }
          ((gm < 0.0) == left_negative ? l : r) = m;
        }
        out.push_back(detail::classify_fixed_point(f, dom, 0.5 * (l + r), opt.delta));
      }
    }
    prev_x = x;
    prev_g = gx;
  }
  return out;
}

/// Smallest x in dom with f(x) = y for an increasing map, by bisection.
inline double inverse_increasing(const MapDescriptor& f, const BoxDomain& dom, double y) {
  double l = dom.lower(0), r = dom.upper(0);
  if (eval(f, l) > y || eval(f, r) < y) throw InvalidArgument("value outside the map's range");
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (l + r);
    if (m <= l || m >= r) break;
    (eval(f, m) < y ? l : r) = m;
  }
  return r;
}

}  // namespace nhifs
