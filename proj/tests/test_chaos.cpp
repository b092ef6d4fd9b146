#include <catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace nhifs;
using Catch::Approx;

TEST_CASE("orbit examples") {
  const IFSystem inv = corpus::involution().system;
  const auto o = chaos_orbit(inv, Point::of(0.25), SymbolStream::explicit_list(Word::parse("22")), 2);
  REQUIRE(o.points.size() == 3);
  CHECK(o.points[1][0] == 0.75);
  CHECK(o.points[2][0] == 0.25);
  CHECK(o.symbols == Word::parse("22"));

  const IFSystem cantor = corpus::cantor_classic().system;
  const auto c = chaos_orbit(cantor, Point::of(0.0), SymbolStream::explicit_list(Word{2}), 1);
  CHECK(c.points[1][0] == Approx(2.0 / 3.0));
  CHECK_THROWS_AS(chaos_orbit(cantor, Point::of(0.0), SymbolStream::explicit_list(Word{2}), 2), StreamExhausted);
  CHECK_THROWS_AS(chaos_orbit(cantor, Point::of(2.0), SymbolStream::periodic(Word{1}), 2), DomainViolation);

  const IFSystem tri = corpus::sierpinski().system;
  const auto t = chaos_orbit(tri, Point::of(1.0, 0.0), SymbolStream::periodic(Word{1}), 30);
  for (std::size_t n = 0; n < t.points.size(); ++n)
    CHECK(distance(t.points[n], Point::of(0.0, 0.0)) == Approx(std::ldexp(1.0, -static_cast<int>(n))));
}

TEST_CASE("chaos order is coding order reversed") {
  CounterRng rng(77);
  for (const auto& name : {"bony", "porcupine", "nonregular", "sierpinski"}) {
    const IFSystem s = load_example(name).system;
    for (int trial = 0; trial < 200; ++trial) {
      Word w;
      const std::size_t len = 1 + rng.below(6);
      for (std::size_t i = 0; i < len; ++i) w.push_back(static_cast<Symbol>(1 + rng.below(s.size())));
      const Point x = oracle::random_point(s.domain().box(), rng);
      const Point end = chaos_orbit(s, x, SymbolStream::explicit_list(w), w.size()).points.back();
      Point coded = x;
      const Word r = w.reversed();
      for (std::size_t i = r.size(); i-- > 0;) coded = s.eval(r[i], coded);
      CHECK(end == coded);
      CHECK(coding_composition_image(s, r).contains(end, 1e-12));
    }
  }
}

TEST_CASE("tail sets") {
  const IFSystem inv = corpus::involution().system;
  const Grid g(inv.domain(), 1024);
  const auto o = chaos_orbit(inv, Point::of(0.25), SymbolStream::explicit_list(Word::parse("22")), 2);
  CHECK(tail_set(o, 0, g) == GridSet::from_points(g, std::vector<Point>{Point::of(0.25), Point::of(0.75)}));
  CHECK(tail_set(o, 2, g) == GridSet::singleton(g, Point::of(0.25)));
  CHECK_THROWS_AS(tail_set(o, 3, g), InvalidArgument);

  const IFSystem bony = corpus::bony().system;
  const Grid gb(bony.domain(), 4096);
  const auto ob = chaos_orbit(bony, Point::of(0.3), SymbolStream::disjunctive(2), 3000);
  const TailRecorder rec = record_tails(bony, Point::of(0.3), SymbolStream::disjunctive(2), 3000, gb);
  for (std::size_t ell : {0, 1, 10, 100, 1000, 2999}) {
    CHECK(tail_set(ob, ell + 1, gb).is_subset_of(tail_set(ob, ell, gb)));
    CHECK(rec.tail(ell) == tail_set(ob, ell, gb));
  }
}

TEST_CASE("seeded orbits are reproducible") {
  const IFSystem s = corpus::porcupine().system;
  const auto a = chaos_orbit(s, Point::of(0.1), SymbolStream::random(99, {0.3, 0.7}), 5000);
  const auto b = chaos_orbit(s, Point::of(0.1), SymbolStream::random(99, {0.3, 0.7}), 5000);
  CHECK(a.symbols == b.symbols);
  CHECK(a.points == b.points);
  const auto c = chaos_orbit(s, Point::of(0.1), SymbolStream::random(100, {0.3, 0.7}), 5000);
  CHECK_FALSE(a.symbols == c.symbols);
}

TEST_CASE("default schedule") {
  CHECK(default_ell_schedule(100) == std::vector<std::size_t>{1, 2, 4, 8, 16, 32, 50});
}

TEST_CASE("the chaos game finds the semifractal") {
  const IFSystem cantor = corpus::cantor_classic().system;
  const Grid g(cantor.domain(), 1 << 14);
  const double w = g.cell_width(0);
  const GridSet c = max_fixed_point(cantor, g, 100, w).set;
  const auto st = check_stability(cantor, c, 0.05, 100);
  const auto r = verify_chaos_game(cantor, Point::of(0.5), 100000, c, st, 5.0 * w);
  CHECK(r.passed());
  CHECK_FALSE(r.caveat);

  // the tail limit is fixed by B
  const GridSet limit = r.tails.tail(r.trace.back().first);
  CHECK(hausdorff(bh_apply(cantor, limit), limit) <= 2.0 * w);

  // random streams find the same set
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto rec = record_tails(cantor, Point::of(0.5), SymbolStream::random(seed, {0.5, 0.5}), 100000, g);
    CHECK(hausdorff(rec.tail(1000), c) <= 2.0 * 5.0 * w);
  }

  const auto o = record_tails(cantor, Point::of(0.0), SymbolStream::disjunctive(2), 100000, g);
  CHECK(one_sided(o.tail(1000), c) <= 5.0 * w);
  CHECK(one_sided(c, o.tail(1000)) <= 5.0 * w);
}

TEST_CASE("the chaos game needs a stability witness") {
  const IFSystem cantor = corpus::cantor_classic().system;
  const Grid g(cantor.domain(), 4096);
  const GridSet c = max_fixed_point(cantor, g, 100, g.cell_width(0)).set;
  const StabilityReport none{};
  CHECK_THROWS_AS(verify_chaos_game(cantor, Point::of(0.5), 1000, c, none, 0.01), HypothesisUnmet);
  const auto r = verify_chaos_game(cantor, Point::of(0.5), 20000, c, none, 0.01, {}, true);
  CHECK(r.caveat);
  CHECK(r.line().find("caveat") != std::string::npos);
}
