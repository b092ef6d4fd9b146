#pragma once

// Uniform cell grids over a BoxDomain and the bitmap sets living on them.
//
// A GridSet is the finite stand-in for a non-empty compact subset of the
// domain: the union of its closed cells. Cells are indexed row-major,
// index = j * nx + i, with ny = 1 in 1D.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nhifs/error.hpp"
#include "nhifs/geometry.hpp"

namespace nhifs {

class Grid {
 public:
  /// Per-axis upper limits on resolution.
  static constexpr std::size_t kMaxCells1D = std::size_t{1} << 20;
  static constexpr std::size_t kMaxCells2D = 2048;

  Grid(BoxDomain domain, std::size_t cells_per_axis)
      : Grid(std::move(domain), {cells_per_axis, cells_per_axis}) {}

  Grid(BoxDomain domain, std::array<std::size_t, 2> cells)
      : domain_(std::move(domain)), cells_(cells) {
    if (domain_.dimension() == 1) cells_[1] = 1;
    const std::size_t limit = domain_.dimension() == 1 ? kMaxCells1D : kMaxCells2D;
    for (int a = 0; a < domain_.dimension(); ++a) {
      if (cells_[a] == 0 || cells_[a] > limit)
        throw InvalidArgument("grid resolution " + std::to_string(cells_[a]) +
                              " outside [1, " + std::to_string(limit) + "]");
    }
  }

  int dimension() const { return domain_.dimension(); }
  const BoxDomain& domain() const { return domain_; }
  std::size_t cells(int axis) const { return cells_[static_cast<std::size_t>(axis)]; }
  std::size_t size() const { return cells_[0] * cells_[1]; }

  double cell_width(int axis) const {
    return domain_.extent(axis) / static_cast<double>(cells(axis));
  }
  double cell_diagonal() const {
    double s = 0.0;
    for (int a = 0; a < dimension(); ++a) s += cell_width(a) * cell_width(a);
    return std::sqrt(s);
  }
  /// One cell of discretization error: the width in 1D, the diagonal in 2D.
  double tolerance() const { return dimension() == 1 ? cell_width(0) : cell_diagonal(); }

  std::size_t index(std::size_t i, std::size_t j = 0) const { return j * cells_[0] + i; }
  std::array<std::size_t, 2> coords(std::size_t idx) const {
    return {idx % cells_[0], idx / cells_[0]};
  }

  Point center(std::size_t idx) const {
    const auto ij = coords(idx);
    Point p{dimension(), {}};
    for (int a = 0; a < dimension(); ++a)
      p[a] = domain_.lower(a) + (static_cast<double>(ij[a]) + 0.5) * cell_width(a);
    return p;
  }

  Box cell_box(std::size_t idx) const {
    const auto ij = coords(idx);
    Box b{dimension(), {}};
    for (int a = 0; a < dimension(); ++a) {
      const double w = cell_width(a);
      b[a] = {domain_.lower(a) + static_cast<double>(ij[a]) * w,
              domain_.lower(a) + static_cast<double>(ij[a] + 1) * w};
    }
    return b;
  }

  /// Cell containing `p` (half-open cells, last cell closed on the right).
  std::size_t cell_of(const Point& p) const {
    if (!domain_.contains(p))
      throw DomainViolation("point outside the grid domain");
    std::array<std::size_t, 2> ij{0, 0};
    for (int a = 0; a < dimension(); ++a) ij[a] = axis_floor(a, p[a]);
    return index(ij[0], ij[1]);
  }

  struct Range {
    std::array<std::size_t, 2> first{0, 0};
    std::array<std::size_t, 2> last{0, 0};
  };

  /// Cells whose interior meets `b`; a degenerate extent selects the cell
  /// containing that coordinate. The closed cells of the range cover `b`.
  Range cover(const Box& b) const {
    Range r;
    for (int a = 0; a < dimension(); ++a) {
      const std::size_t lo = axis_floor(a, b[a].lo);
      const double t = scaled(a, b[a].hi);
      const double up = std::ceil(t) - 1.0;
      std::size_t hi = up <= 0.0 ? 0 : std::min(cells(a) - 1, static_cast<std::size_t>(up));
      r.first[a] = lo;
      r.last[a] = std::max(lo, hi);
    }
    return r;
  }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.domain_ == b.domain_ && a.cells_ == b.cells_;
  }

 private:
  double scaled(int axis, double x) const {
    return (x - domain_.lower(axis)) / domain_.extent(axis) * static_cast<double>(cells(axis));
  }
  std::size_t axis_floor(int axis, double x) const {
    const double t = std::floor(scaled(axis, x));
    if (t <= 0.0) return 0;
    return std::min(cells(axis) - 1, static_cast<std::size_t>(t));
  }

  BoxDomain domain_;
  std::array<std::size_t, 2> cells_;
};

inline void require_compatible(const Grid& a, const Grid& b) {
  if (!(a == b)) throw IncompatibleGrid("grid sets differ in domain or resolution");
}

class GridSet {
 public:
  static GridSet full(const Grid& grid) {
    return GridSet(grid, std::vector<std::uint8_t>(grid.size(), 1));
  }

  static GridSet singleton(const Grid& grid, const Point& p) {
    std::vector<std::uint8_t> bits(grid.size(), 0);
    bits[grid.cell_of(p)] = 1;
    return GridSet(grid, std::move(bits));
  }

  static GridSet from_points(const Grid& grid, std::span<const Point> points) {
    std::vector<std::uint8_t> bits(grid.size(), 0);
    for (const auto& p : points) bits[grid.cell_of(p)] = 1;
    return from_bitmap(grid, std::move(bits));
  }

  /// Outer rasterization of a union of boxes.
  static GridSet from_boxes(const Grid& grid, std::span<const Box> boxes) {
    std::vector<std::uint8_t> bits(grid.size(), 0);
    for (const auto& b : boxes) {
      if (!grid.domain().contains(b)) throw DomainViolation("box outside the grid domain");
      paint(grid, bits, b);
    }
    return from_bitmap(grid, std::move(bits));
  }

  static GridSet from_cells(const Grid& grid, std::span<const std::size_t> cells) {
    std::vector<std::uint8_t> bits(grid.size(), 0);
    for (auto c : cells) {
      if (c >= grid.size()) throw DomainViolation("cell index out of range");
      bits[c] = 1;
    }
    return from_bitmap(grid, std::move(bits));
  }

  static GridSet from_bitmap(const Grid& grid, std::vector<std::uint8_t> bits) {
    if (bits.size() != grid.size())
      throw InvalidArgument("bitmap size does not match the grid");
    if (std::none_of(bits.begin(), bits.end(), [](std::uint8_t b) { return b != 0; }))
      throw EmptySet("grid set must have at least one cell");
    for (auto& b : bits) b = b ? 1 : 0;
    return GridSet(grid, std::move(bits));
  }

  /// Sets every cell meeting the interior of `b` (see Grid::cover).
  static void paint(const Grid& grid, std::vector<std::uint8_t>& bits, const Box& b) {
    const auto r = grid.cover(b);
    for (std::size_t j = r.first[1]; j <= r.last[1]; ++j)
      for (std::size_t i = r.first[0]; i <= r.last[0]; ++i) bits[grid.index(i, j)] = 1;
  }

  const Grid& grid() const { return grid_; }
  std::span<const std::uint8_t> bitmap() const { return bits_; }
  bool contains(std::size_t idx) const { return bits_[idx] != 0; }
  bool contains(const Point& p) const { return contains(grid_.cell_of(p)); }

  std::size_t count() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
  }

  template <class F>
  void for_each_cell(F&& f) const {
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) f(i);
  }

  std::vector<std::size_t> cells() const {
    std::vector<std::size_t> out;
    for_each_cell([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  bool is_subset_of(const GridSet& other) const {
    return !first_cell_not_in(other).has_value();
  }

  /// Lowest-index cell of this set missing from `other`.
  std::optional<std::size_t> first_cell_not_in(const GridSet& other) const {
    require_compatible(grid_, other.grid_);
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] && !other.bits_[i]) return i;
    return std::nullopt;
  }

  GridSet unite(const GridSet& other) const {
    require_compatible(grid_, other.grid_);
    auto bits = bits_;
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] |= other.bits_[i];
    return GridSet(grid_, std::move(bits));
  }

  /// Empty intersections are reported as nullopt rather than thrown.
  std::optional<GridSet> intersect(const GridSet& other) const {
    require_compatible(grid_, other.grid_);
    auto bits = bits_;
    bool any = false;
    for (std::size_t i = 0; i < bits.size(); ++i) {
      bits[i] &= other.bits_[i];
      any = any || bits[i];
    }
    if (!any) return std::nullopt;
    return GridSet(grid_, std::move(bits));
  }

  friend bool operator==(const GridSet& a, const GridSet& b) {
    return a.grid_ == b.grid_ && a.bits_ == b.bits_;
  }

 private:
  GridSet(Grid grid, std::vector<std::uint8_t> bits)
      : grid_(std::move(grid)), bits_(std::move(bits)) {}

  Grid grid_;
  std::vector<std::uint8_t> bits_;
};

}  // namespace nhifs
