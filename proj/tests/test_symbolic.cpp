#include <catch_amalgamated.hpp>

#include <set>

#include "oracles.hpp"

using namespace nhifs;
using Catch::Approx;

namespace {

const IFSystem& cantor() {
  static const IFSystem s = corpus::cantor_classic().system;
  return s;
}

Word random_word(CounterRng& rng, std::size_t k, std::size_t max_len) {
  Word w;
  const std::size_t n = rng.below(max_len + 1);
  for (std::size_t i = 0; i < n; ++i) w.push_back(static_cast<Symbol>(1 + rng.below(k)));
  return w;
}

}  // namespace

TEST_CASE("words") {
  CHECK(Word::parse("112").to_string() == "112");
  CHECK(Word::parse("112").reversed() == Word::parse("211"));
  CHECK((Word::parse("1") + Word::parse("2")) == Word::parse("12"));
  CHECK(Word::parse("").empty());
  CHECK_THROWS_AS(Word::parse("1a"), InvalidArgument);
  CHECK_THROWS_AS(coding_composition_image(cantor(), Word::parse("13")), InvalidArgument);
}

TEST_CASE("symbol streams") {
  auto p = SymbolStream::periodic(Word::parse("12"));
  CHECK(p.next() == 1);
  CHECK(p.next() == 2);
  CHECK(p.next() == 1);
  CHECK_THROWS_AS(SymbolStream::periodic(Word{}), InvalidArgument);
  CHECK_THROWS_AS(SymbolStream::random(1, {0.5, 0.6}), InvalidArgument);
  auto e = SymbolStream::explicit_list(Word::parse("2"));
  CHECK(e.next() == 2);
  CHECK_THROWS_AS(e.next(), StreamExhausted);

  auto r1 = SymbolStream::random(42, {0.25, 0.75});
  auto r2 = SymbolStream::random(42, {0.25, 0.75});
  std::size_t ones = 0;
  for (int i = 0; i < 4000; ++i) {
    const Symbol a = r1.next();
    CHECK(a == r2.next());
    ones += a == 1;
  }
  CHECK(ones > 800);
  CHECK(ones < 1200);
}

TEST_CASE("disjunctive prefix") {
  CHECK(disjunctive_prefix(2, 8) == Word::parse("12111221"));
  CHECK(disjunctive_prefix(2, 2) == Word::parse("12"));
  CHECK(disjunctive_prefix(3, 6) == Word::parse("123111"));
  for (std::size_t k : {2, 3}) {
    std::size_t total = 0, count = 1;
    for (std::size_t len = 1; len <= 4; ++len) {
      count *= k;
      total += count * len;
    }
    const Word prefix = disjunctive_prefix(k, total);
    CounterRng rng(k);
    std::vector<Word> all{Word{}};
    for (std::size_t len = 1; len <= 4; ++len) {
      std::vector<Word> next;
      for (const auto& w : all)
        if (w.size() + 1 == len)
          for (Symbol s = 1; s <= k; ++s) {
            Word x = w;
            x.push_back(s);
            next.push_back(x);
          }
      for (const auto& w : next) CHECK(prefix.contains_factor(w));
      all.insert(all.end(), next.begin(), next.end());
    }
  }
  auto d = SymbolStream::disjunctive(2);
  for (auto s : disjunctive_prefix(2, 100)) CHECK(d.next() == s);
}

TEST_CASE("coding composition images") {
  for (int n = 1; n <= 8; ++n) {
    Word w;
    for (int i = 0; i < n; ++i) w.push_back(1);
    const Box b = coding_composition_image(cantor(), w);
    CHECK(b[0].lo == Approx(0.0).margin(1e-15));
    CHECK(b[0].hi == Approx(std::pow(3.0, -n)));
  }
  const Box b21 = coding_composition_image(cantor(), Word::parse("21"));
  CHECK(b21[0].lo == Approx(2.0 / 3.0));
  CHECK(b21[0].hi == Approx(7.0 / 9.0));
  CHECK(coding_composition_image(cantor(), Word{}) == cantor().domain().box());
}

TEST_CASE("appending a symbol shrinks the enclosure") {
  CounterRng rng(8);
  for (const auto& name : {"bony", "porcupine", "nonregular", "sierpinski"}) {
    const IFSystem s = load_example(name).system;
    for (int trial = 0; trial < 200; ++trial) {
      Word w = random_word(rng, s.size(), 10);
      const Box outer = coding_composition_image(s, w);
      w.push_back(static_cast<Symbol>(1 + rng.below(s.size())));
      CHECK(outer.contains(coding_composition_image(s, w), 1e-12));
    }
  }
}

TEST_CASE("certification") {
  const auto c = certify_weak_hyperbolic(cantor(), SymbolStream::periodic(Word{1}), 1e-3, 100);
  REQUIRE(c);
  CHECK(c->prefix.size() == 7);
  CHECK(c->image.diameter() <= 1e-3);

  const IFSystem bony = corpus::bony().system;
  CHECK_FALSE(certify_weak_hyperbolic(bony, SymbolStream::periodic(Word::parse("12")), 0.01, 10000));
  const IFSystem inv = corpus::involution().system;
  CHECK_FALSE(certify_weak_hyperbolic(inv, SymbolStream::periodic(Word{2}), 0.1, 1000));
  CHECK_THROWS_AS(certify_weak_hyperbolic(cantor(), SymbolStream::explicit_list(Word::parse("12")), 1e-3, 100),
                  StreamExhausted);
  CHECK_THROWS_AS(certify_weak_hyperbolic(cantor(), SymbolStream::periodic(Word{1}), 0.0, 100), InvalidArgument);
}

TEST_CASE("coding points") {
  CHECK(coding_point(cantor(), SymbolStream::periodic(Word{1}), 1e-6, 100).point[0] == Approx(0.0).margin(1e-6));
  CHECK(coding_point(cantor(), SymbolStream::periodic(Word{2}), 1e-6, 100).point[0] == Approx(1.0).margin(1e-6));
  const IFSystem por = corpus::porcupine().system;
  CHECK(coding_point(por, SymbolStream::periodic(Word{1}), 1e-6, 1000).point[0] == Approx(4.0 / 9.0).margin(1e-6));
  CHECK_THROWS_AS(coding_point(corpus::involution().system, SymbolStream::periodic(Word{2}), 0.1, 100), NoCertificate);
}

TEST_CASE("certificates do not depend on the base point") {
  CounterRng rng(12);
  for (const auto& name : {"cantor_classic", "porcupine", "nonregular", "sierpinski"}) {
    const IFSystem s = load_example(name).system;
    for (int trial = 0; trial < 20; ++trial) {
      const auto cert = certify_weak_hyperbolic(s, SymbolStream::random(trial, s.effective_weights()), 0.01, 200);
      if (!cert) continue;
      const auto pt = to_target_point(*cert);
      CHECK(pt.radius <= 0.01);
      for (int i = 0; i < 10; ++i) {
        Point x = oracle::random_point(s.domain().box(), rng);
        for (auto it = cert->prefix.end(); it != cert->prefix.begin();) x = s.eval(*--it, x);
        CHECK(cert->image.contains(x, 1e-12));
      }
      for (int i = 0; i < 5; ++i) {
        const Word ext = cert->prefix + random_word(rng, s.size(), 6);
        CHECK(cert->image.contains(coding_composition_image(s, ext), 1e-12));
      }
    }
  }
}

TEST_CASE("target samples") {
  const Grid g(BoxDomain::unit_interval(), 1 << 14);
  const auto pts = target_sample(cantor(), g, 8, 1e-2);
  CHECK(pts.size() == 32);
  const GridSet c = oracle::cantor_raster(g, 10);
  for (const auto& p : pts) {
    CHECK(p.word.size() == 5);
    CHECK(p.radius <= 1e-2);
    CHECK(point_set_distance(p.point, c) <= 1e-2);
  }
  CHECK(target_sample(corpus::involution().system, g, 16, 0.1).empty());

  // more length never loses points
  const IFSystem por = corpus::porcupine().system;
  const auto short_run = target_sample(por, g, 6, 0.02);
  const auto long_run = target_sample(por, g, 9, 0.02);
  std::set<std::size_t> long_cells;
  for (const auto& p : long_run) long_cells.insert(g.cell_of(p.point));
  CHECK(long_run.size() >= short_run.size());
  for (const auto& p : short_run) CHECK(long_cells.count(g.cell_of(p.point)));
}

TEST_CASE("target samples are forward invariant on the Cantor system") {
  const Grid g(BoxDomain::unit_interval(), 1 << 14);
  const double eps = 1e-3;
  const auto pts = target_sample(cantor(), g, 12, eps);
  const auto deeper = target_sample(cantor(), g, 13, eps / 3.0);
  std::vector<Point> ps;
  for (const auto& p : deeper) ps.push_back(p.point);
  const GridSet pool = GridSet::from_points(g, ps);
  for (const auto& p : pts)
    for (Symbol i = 1; i <= 2; ++i) {
      const Point image = cantor().eval(i, p.point);
      CHECK(point_set_distance(image, pool) <= p.radius + g.cell_width(0));
    }
}

TEST_CASE("bony coverage from the W blocks") {
  const IFSystem bony = corpus::bony().system;
  const Grid g(bony.domain(), 1 << 14);
  const std::vector<Word> blocks{Word::parse("111"), Word::parse("112"), Word::parse("221"), Word::parse("22222")};
  const auto pts = target_sample_blocks(bony, g, blocks, 40, 0.01);
  std::vector<Point> ps;
  for (const auto& p : pts) ps.push_back(p.point);
  CHECK(one_sided(GridSet::full(g), GridSet::from_points(g, ps)) <= 0.01);
}

TEST_CASE("semifractal approximations") {
  const Grid g(BoxDomain::unit_interval(), 1 << 14);
  const double w = g.cell_width(0);
  const auto seed = coding_point(cantor(), SymbolStream::periodic(Word{1}), w, 100);
  const auto r = semifractal_approx(cantor(), seed, g, 100, w);
  CHECK(hausdorff(r.final_set, oracle::cantor_raster(g, 12)) <= 4.0 * w);

  const auto cs = corpus::cantor_stable().system;
  const Grid g2(cs.domain(), 1 << 14);
  const auto seed2 = coding_point(cs, SymbolStream::periodic(Word{1}), g2.cell_width(0), 100);
  const GridSet sf = semifractal_approx(cs, seed2, g2, 200, g2.cell_width(0)).final_set;
  const GridSet c = GridSet::from_boxes(g2, oracle::cantor_intervals(10));
  CHECK(hausdorff(sf, c) <= 2.0 * g2.cell_width(0));
  CHECK(hausdorff(sf, GridSet::full(g2)) > 0.9);

  const auto por = corpus::porcupine().system;
  const auto seed3 = coding_point(por, SymbolStream::periodic(Word{1}), w, 1000);
  CHECK(hausdorff(semifractal_approx(por, seed3, g, 500, w).final_set, GridSet::full(g)) <= 0.01);
}
