#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nhifs/error.hpp"
#include "nhifs/geometry.hpp"
#include "nhifs/grid.hpp"
#include "nhifs/map.hpp"

namespace nhifs {

/// Outer raster of f(A): every cell meeting the interior of the enclosure
/// of f(cell), for each cell of A.
inline GridSet image_of_gridset(const MapDescriptor& f, const GridSet& a) {
  const Grid& g = a.grid();
  const Box& dom = g.domain().box();
  std::vector<std::uint8_t> bits(g.size(), 0);
  a.for_each_cell([&](std::size_t c) {
    GridSet::paint(g, bits, interval_image(f, g.cell_box(c)).clamped_to(dom));
  });
  return GridSet::from_bitmap(g, std::move(bits));
}

/// An iterated function system: k >= 1 self-maps of a common box domain,
/// optionally weighted for the probabilistic chaos game.
class IFSystem {
 public:
  /// Per-axis resolution of the self-map check run at construction.
  static constexpr std::size_t kValidationCells1D = 1024;
  static constexpr std::size_t kValidationCells2D = 64;

  IFSystem(BoxDomain domain, std::vector<MapDescriptor> maps,
           std::optional<std::vector<double>> weights = std::nullopt)
      : domain_(std::move(domain)), maps_(std::move(maps)), weights_(std::move(weights)) {
    validate();
  }

  const BoxDomain& domain() const { return domain_; }
  int dimension() const { return domain_.dimension(); }
  std::size_t size() const { return maps_.size(); }
  const std::vector<MapDescriptor>& maps() const { return maps_; }
  /// Maps are numbered 1..k.
  const MapDescriptor& map(std::size_t symbol) const { return maps_.at(symbol - 1); }
  const std::optional<std::vector<double>>& weights() const { return weights_; }

  /// Weights, or the uniform distribution when none were given.
  std::vector<double> effective_weights() const {
    if (weights_) return *weights_;
    return std::vector<double>(maps_.size(), 1.0 / static_cast<double>(maps_.size()));
  }

  /// f_symbol(p), with p checked against the domain; the result is clamped
  /// back into the domain to absorb rounding.
  Point eval(std::size_t symbol, const Point& p) const {
    if (!domain_.contains(p)) throw DomainViolation("point outside the IFS domain");
    return domain_.clamp(nhifs::eval(map(symbol), p));
  }

  Box image(std::size_t symbol, const Box& b) const {
    if (!domain_.contains(b)) throw DomainViolation("box outside the IFS domain");
    return interval_image(map(symbol), b).clamped_to(domain_.box());
  }

  friend bool operator==(const IFSystem&, const IFSystem&) = default;

 private:
  void validate() const {
    if (maps_.empty()) throw InvalidArgument("an IFS needs at least one map");
    for (std::size_t i = 0; i < maps_.size(); ++i) {
      const std::string who = "map " + std::to_string(i + 1);
      if (maps_[i].dimension() != dimension())
        throw InvalidArgument(who + " has the wrong dimension");
      check_ranges(maps_[i], who);
      check_self_map(maps_[i], who);
    }
    if (weights_) {
      if (weights_->size() != maps_.size())
        throw InvalidArgument("expected " + std::to_string(maps_.size()) + " weights");
      double sum = 0.0;
      for (double w : *weights_) {
        if (!(w > 0.0)) throw InvalidArgument("weights must be strictly positive");
        sum += w;
      }
      if (std::abs(sum - 1.0) > 1e-12) {
        std::ostringstream os;
        os << "weights sum " << sum;
        throw InvalidArgument(os.str());
      }
    }
  }

  // Piecewise-linear parts must span exactly the domain axis.
  void check_ranges(const MapDescriptor& f, const std::string& who) const {
    if (const auto* pwl = std::get_if<PiecewiseLinear1D>(&f.variant())) {
      const double slack = domain_.slack();
      if (std::abs(pwl->vertices.front().x - domain_.lower(0)) > slack ||
          std::abs(pwl->vertices.back().x - domain_.upper(0)) > slack)
        throw InvalidArgument(who + ": piecewise-linear vertices must span the domain");
    } else if (const auto* comp = std::get_if<Composite>(&f.variant())) {
      for (const auto& part : comp->parts) check_ranges(part, who);
    }
  }

  void check_self_map(const MapDescriptor& f, const std::string& who) const {
    const Grid g(domain_, dimension() == 1 ? kValidationCells1D : kValidationCells2D);
    for (std::size_t c = 0; c < g.size(); ++c) {
      const Box img = interval_image(f, g.cell_box(c));
      if (!domain_.contains(img)) {
        std::ostringstream os;
        os << who << " does not map the domain into itself near x = " << g.center(c)[0];
        if (dimension() == 2) os << ", y = " << g.center(c)[1];
        throw InvalidArgument(os.str());
      }
    }
  }

  BoxDomain domain_;
  std::vector<MapDescriptor> maps_;
  std::optional<std::vector<double>> weights_;
};

}  // namespace nhifs
