#include <catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace nhifs;

namespace {

const IFSystem& cantor() {
  static const IFSystem s = corpus::cantor_classic().system;
  return s;
}

}  // namespace

TEST_CASE("bh_apply examples") {
  const Grid g(BoxDomain::unit_interval(), 4096);
  const double w = g.cell_width(0);
  CHECK(hausdorff(bh_apply(cantor(), GridSet::full(g)), oracle::cantor_raster(g, 1)) <= w);

  const IFSystem inv = corpus::involution().system;
  const GridSet pair = GridSet::from_points(g, std::vector<Point>{Point::of(0.25), Point::of(0.75)});
  CHECK(hausdorff(bh_apply(inv, GridSet::singleton(g, Point::of(0.25))), pair) <= w);

  CHECK(bh_apply(corpus::bony().system, GridSet::full(g)) == GridSet::full(g));
}

TEST_CASE("bh_apply is monotone and preserves unions") {
  const Grid g(BoxDomain::unit_interval(), 2048);
  CounterRng rng(17);
  for (const auto& name : {"bony", "porcupine", "nonregular"}) {
    const IFSystem s = load_example(name).system;
    for (int trial = 0; trial < 10; ++trial) {
      const GridSet a = oracle::random_set(g, rng, 100);
      const GridSet b = oracle::random_set(g, rng, 100);
      const GridSet ab = a.unite(b);
      CHECK(bh_apply(s, a).is_subset_of(bh_apply(s, ab)));
      CHECK(bh_apply(s, ab) == bh_apply(s, a).unite(bh_apply(s, b)));
    }
  }
}

TEST_CASE("bh_iterate from a point of the Cantor set") {
  const Grid g(BoxDomain::unit_interval(), 1 << 14);
  const double w = g.cell_width(0);
  const GridSet c = oracle::cantor_raster(g, 12);
  GridSet it = GridSet::singleton(g, Point::of(0.0));
  for (int n = 1; n <= 9; ++n) {
    it = bh_apply(cantor(), it);
    CHECK(hausdorff(it, c) <= std::pow(3.0, -n) + 2.0 * w);
  }
  const auto r = bh_iterate(cantor(), GridSet::singleton(g, Point::of(0.0)), 50, w);
  CHECK(r.status == ConvergenceStatus::Converged);
  CHECK(hausdorff(r.final_set, c) <= 2.0 * w);
  for (std::size_t i = 1; i < r.steps.size(); ++i) CHECK(r.steps[i].index > r.steps[i - 1].index);
}

TEST_CASE("bh_iterate trivial cases") {
  const Grid g(BoxDomain::unit_interval(), 1024);
  const IFSystem inv = corpus::involution().system;
  const auto r = bh_iterate(inv, GridSet::singleton(g, Point::of(0.25)), 20, g.cell_width(0));
  CHECK(r.final_set.count() == 2);
  CHECK(r.status == ConvergenceStatus::Converged);

  const IFSystem id(BoxDomain::unit_interval(), {MapDescriptor::identity(1)});
  const GridSet a = GridSet::from_points(g, std::vector<Point>{Point::of(0.1), Point::of(0.6)});
  const auto q = bh_iterate(id, a, 20, g.cell_width(0));
  CHECK(q.status == ConvergenceStatus::Converged);
  CHECK(q.final_set == a);
  for (const auto& s : q.steps) CHECK(s.hausdorff == 0.0);
}

TEST_CASE("max_fixed_point") {
  const Grid g(BoxDomain::unit_interval(), 1 << 14);
  const double w = g.cell_width(0);
  const auto c = max_fixed_point(cantor(), g, 100, w);
  CHECK(c.status == ConvergenceStatus::Converged);
  CHECK(c.residual <= w);
  CHECK(c.fixed_within_tolerance);
  CHECK(hausdorff(c.set, oracle::cantor_raster(g, 12)) <= 2.0 * w);
  for (std::size_t i = 1; i < c.trace.steps.size(); ++i) CHECK(c.trace.steps[i].backward == 0.0);

  const IFSystem cs = corpus::cantor_stable().system;
  const Grid g2(cs.domain(), 1 << 14);
  CHECK(max_fixed_point(cs, g2, 50, g2.cell_width(0)).set == GridSet::full(g2));
  CHECK(max_fixed_point(corpus::involution().system, g, 50, w).set == GridSet::full(g));
}

TEST_CASE("a_star") {
  const auto nr = corpus::nonregular();
  const IFSystem& s = nr.system;
  const Grid g(s.domain(), 1 << 14);
  const double w = g.cell_width(0);
  const double p1 = fixed_points_1d(s.map(2), s.domain()).front().x;
  const GridSet upper = GridSet::from_boxes(g, std::vector<Box>{Box::of({p1, 1.0})});
  const auto r = a_star(s, upper, 100, w);
  CHECK(r.fixed_within_tolerance);
  CHECK(r.set.is_subset_of(upper));
  CHECK(hausdorff(r.set, GridSet::full(g)) > 0.1);

  CHECK(a_star(cantor(), GridSet::full(g), 100, w).set == max_fixed_point(cantor(), g, 100, w).set);
  const GridSet c = max_fixed_point(cantor(), g, 100, w).set;
  const auto rc = a_star(cantor(), c, 100, w);
  CHECK(rc.set == c);
  CHECK(rc.residual <= w);

  CHECK_THROWS_AS(a_star(cantor(), GridSet::singleton(g, Point::of(0.5)), 10, w), PreconditionFailed);
}

TEST_CASE("every fixed point lies in the maximum one") {
  const Grid g(BoxDomain::unit_interval(), 1 << 14);
  const double w = g.cell_width(0);
  for (const auto& name : {"cantor_classic", "nonregular", "porcupine", "involution"}) {
    const IFSystem s = load_example(name).system;
    const auto xmax = max_fixed_point(s, g, 200, w);
    const GridSet room = dilate(xmax.set, 2.0 * w);
    std::vector<FixedPointRecord> records{xmax};
    if (auto pt = target_sample(s, g, 12, 4.0 * w, 1); !pt.empty()) {
      const auto sf = semifractal_approx(s, pt.front(), g, 200, w);
      records.push_back(fixed_point_record(s, sf.final_set, w));
    }
    for (const auto& r : records)
      if (r.residual <= w) CHECK(r.set.is_subset_of(room));
  }
}

TEST_CASE("fixed point records classify") {
  const Grid g(BoxDomain::unit_interval(), 1024);
  const auto full = fixed_point_record(cantor(), GridSet::full(g), g.cell_width(0));
  CHECK(full.forward_invariant);
  CHECK_FALSE(full.fixed_within_tolerance);
  CHECK(full.residual > 0.1);
}
