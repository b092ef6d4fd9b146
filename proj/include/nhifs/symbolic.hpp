#pragma once

// Symbolic side of an IFS: coding-order compositions, certification of
// weakly hyperbolic prefixes, the coding map and the target set.
//
// CODING ORDER. The word w_0 w_1 ... w_{n-1} denotes
//     f_{w_0} o f_{w_1} o ... o f_{w_{n-1}},
// so the LAST symbol's map is applied FIRST. Appending a symbol composes on
// the right and can only shrink the image. The chaos game (chaos.hpp) uses
// the opposite order.

#include <cstddef>
#include <limits>
#include <optional>
#include <unordered_set>
#include <utility>
#include <vector>

#include "nhifs/convergence.hpp"
#include "nhifs/error.hpp"
#include "nhifs/geometry.hpp"
#include "nhifs/grid.hpp"
#include "nhifs/hutchinson.hpp"
#include "nhifs/ifs.hpp"
#include "nhifs/word.hpp"

namespace nhifs {

/// A prefix whose coding-order image has diameter at most the requested eps.
struct Certificate {
  Word prefix;
  Box image;
};

/// Approximates pi(w) for every infinite continuation of `word`: the image
/// of every continuation lies in the box of diameter `radius` around `point`.
struct CertifiedTargetPoint {
  Point point;
  Word word;
  double radius = 0.0;
};

/// Enclosure of f_{w_0} o ... o f_{w_{n-1}}(X); the empty word gives X.
inline Box coding_composition_image(const IFSystem& s, const Word& w) {
  w.check_alphabet(s.size());
  Box b = s.domain().box();
  for (std::size_t i = w.size(); i-- > 0;) b = s.image(w[i], b);
  return b;
}

/// Extends the prefix of `stream` until its coding-order image has diameter
/// <= eps. Returns nullopt (undetermined, not "not weakly hyperbolic") when
/// `budget` symbols do not suffice.
///
/// Enclosures are inclusion-isotone, so diameters do not increase with the
/// prefix length; the first certifying length is located by doubling and
/// bisection instead of a linear scan.
inline std::optional<Certificate> certify_weak_hyperbolic(const IFSystem& s, SymbolStream stream,
                                                          double eps, std::size_t budget) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  std::vector<Symbol> symbols;
  auto image_of = [&](std::size_t n) {
    while (symbols.size() < n) {
      const Symbol sym = stream.next();
      if (sym > s.size()) throw InvalidArgument("stream symbol outside the alphabet");
      symbols.push_back(sym);
    }
    Box b = s.domain().box();
    for (std::size_t i = n; i-- > 0;) b = s.image(symbols[i], b);
    return b;
  };

  std::size_t lo = 0;  // known to fail (length 0 is the whole domain)
  std::size_t hi = 0;
  Box hi_box = s.domain().box();
  if (hi_box.diameter() <= eps) return Certificate{Word{}, hi_box};
  for (std::size_t n = 1;; n = std::min(budget, n * 2)) {
    const Box b = image_of(n);
    if (b.diameter() <= eps) {
      hi = n;
      hi_box = b;
      break;
    }
    lo = n;
    if (n >= budget) return std::nullopt;
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const Box b = image_of(mid);
    if (b.diameter() <= eps) {
      hi = mid;
      hi_box = b;
    } else {
      lo = mid;
    }
  }
  return Certificate{Word(std::vector<Symbol>(symbols.begin(), symbols.begin() + static_cast<long>(hi))),
                     hi_box};
}

inline CertifiedTargetPoint to_target_point(const Certificate& c) {
  return {c.image.center(), c.prefix,
          std::max(c.image.diameter(), std::numeric_limits<double>::min())};
}

/// The coding map on a certified prefix: center of the image box, with its
/// diameter as radius.
inline CertifiedTargetPoint coding_point(const IFSystem& s, SymbolStream stream, double eps,
                                         std::size_t budget) {
  auto cert = certify_weak_hyperbolic(s, std::move(stream), eps, budget);
  if (!cert)
    throw NoCertificate("no prefix of length <= " + std::to_string(budget) +
                        " has image diameter <= eps");
  return to_target_point(*cert);
}

namespace detail {

struct TargetSearch {
  const IFSystem& system;
  const Grid& grid;
  const std::vector<Word>& blocks;
  std::size_t max_len;
  double eps;
  std::size_t max_points;
  std::vector<CertifiedTargetPoint> out;
  std::unordered_set<std::size_t> taken_cells;
  Word word;

  bool full() const { return out.size() >= max_points; }

  void visit() {
    for (const auto& block : blocks) {
      if (full()) return;
      if (word.size() + block.size() > max_len) continue;
      for (auto sym : block) word.push_back(sym);
      const Box img = coding_composition_image(system, word);
      if (img.diameter() <= eps) {
        CertifiedTargetPoint p = to_target_point({word, img});
        if (taken_cells.insert(grid.cell_of(p.point)).second) out.push_back(std::move(p));
      } else {
        visit();
      }
      for (std::size_t i = 0; i < block.size(); ++i) word.pop_back();
    }
  }
};

}  // namespace detail

/// Certified points reached by concatenations of `blocks` of total length
/// <= max_len, explored depth first in block order. A branch stops at its
/// first certified prefix. Points are deduplicated by grid cell, keeping the
/// first found.
inline std::vector<CertifiedTargetPoint> target_sample_blocks(
    const IFSystem& s, const Grid& grid, const std::vector<Word>& blocks, std::size_t max_len,
    double eps, std::size_t max_points = std::numeric_limits<std::size_t>::max()) {
  if (max_len < 1) throw InvalidArgument("max_len must be at least 1");
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  if (!(grid.domain() == s.domain())) throw IncompatibleGrid("grid domain differs from the IFS domain");
  for (const auto& b : blocks) {
    if (b.empty()) throw InvalidArgument("blocks must be non-empty words");
    b.check_alphabet(s.size());
  }
  detail::TargetSearch search{s, grid, blocks, max_len, eps, max_points, {}, {}, {}};
  search.visit();
  return std::move(search.out);
}

/// Inner approximation of the target set from all words of length <= max_len,
/// in lexicographic order. Empty when nothing certifies at this budget.
inline std::vector<CertifiedTargetPoint> target_sample(
    const IFSystem& s, const Grid& grid, std::size_t max_len, double eps,
    std::size_t max_points = std::numeric_limits<std::size_t>::max()) {
  std::vector<Word> letters;
  for (std::size_t i = 1; i <= s.size(); ++i) letters.push_back(Word{static_cast<Symbol>(i)});
  return target_sample_blocks(s, grid, letters, max_len, eps, max_points);
}

/// Iterates B from the grid singleton of a certified target point; the
/// final set approximates the closure of the target set.
inline ConvergenceReport semifractal_approx(const IFSystem& s, const CertifiedTargetPoint& seed,
                                            const Grid& grid, std::size_t steps, double tol) {
  return bh_iterate(s, GridSet::singleton(grid, seed.point), steps, tol);
}

}  // namespace nhifs
