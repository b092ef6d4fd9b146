#pragma once

// Catalog of worked examples: the systems themselves, the claims each one
// is expected to exhibit, where every parameter comes from, and numeric
// checks of the hypotheses each system is built to satisfy.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nhifs/error.hpp"
#include "nhifs/fixed_points.hpp"
#include "nhifs/geometry.hpp"
#include "nhifs/ifs.hpp"
#include "nhifs/map.hpp"

namespace nhifs {

/// Where a numeric parameter comes from.
enum class Source {
  Published,     ///< stated verbatim in the source construction
  Instantiated,  ///< chosen here to satisfy qualitative conditions
  Classical,     ///< textbook system, not part of the source construction
};

inline std::string_view to_string(Source s) {
  switch (s) {
    case Source::Published: return "published";
    case Source::Instantiated: return "instantiated";
    case Source::Classical: return "classical";
  }
  return "?";
}

struct ParameterNote {
  std::size_t map = 0;  ///< 1-based map index
  std::string parameter;
  Source source = Source::Published;
  std::string remark;
};

/// A machine-checkable claim; tags are resolved by claims.hpp.
struct Claim {
  std::string tag;
  std::string statement;
};

struct ExampleSpec {
  std::string name;
  std::string title;
  IFSystem system;
  std::vector<Claim> claims;
  std::vector<ParameterNote> notes;
};

inline const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names{"cantor_classic", "cantor_stable", "bony",
                                              "porcupine",      "involution",    "nonregular",
                                              "sierpinski"};
  return names;
}

namespace corpus {

inline constexpr double kPorcupineLambda = 0.8;

inline MapDescriptor pwl(std::vector<Vertex> v) { return MapDescriptor(PiecewiseLinear1D{std::move(v)}); }

inline ExampleSpec cantor_classic() {
  return {"cantor_classic",
          "middle-thirds Cantor system",
          IFSystem(BoxDomain::unit_interval(),
                   {Affine::line(1.0 / 3.0, 0.0), Affine::line(1.0 / 3.0, 2.0 / 3.0)}),
          {{"sf_minimum", "the semifractal lies in every fixed point"},
           {"global_equivalence:BothHold", "semifractal equals X* and B is globally attracting"},
           {"conley:HoldsAtBudget", "the Cantor set is a Conley attractor"},
           {"stability:StableWitness", "the Cantor set is stable"},
           {"chaos:Converges", "disjunctive chaos game tails approach the Cantor set"}},
          {{1, "g1 = x/3", Source::Published, "restriction of f1 of the stable Cantor system"},
           {2, "g2 = x/3 + 2/3", Source::Published, "restriction of f2 of the stable Cantor system"}}};
}

inline ExampleSpec cantor_stable() {
  return {"cantor_stable",
          "Cantor semifractal that is stable but not a Conley attractor",
          IFSystem(BoxDomain(0.0, 2.0),
                   {Affine::line(1.0 / 3.0, 0.0), pwl({{0.0, 2.0 / 3.0}, {1.0, 1.0}, {2.0, 2.0}})}),
          {{"swh_nonempty", "f1 is a contraction, so the constant word 1 is weakly hyperbolic"},
           {"sf_minimum", "the semifractal lies in every fixed point"},
           {"lemma_dista", "B^n(K) approaches the semifractal from one side for K = {2}"},
           {"conley:FailsWithWitness", "cells in [1, 1+eps] are fixed by f2"},
           {"stability:StableWitness", "both maps are non-expanding"},
           {"global_equivalence:BothFail", "X* = [0,2] differs from the Cantor semifractal"},
           {"chaos:Converges", "tails from x = 2 approach the Cantor set"}},
          {{1, "f1 = x/3", Source::Published, ""},
           {2, "f2 = x/3 + 2/3 on [0,1]", Source::Published, "vertices (0,2/3) and (1,1)"},
           {2, "f2 = x on [1,2]", Source::Published, "vertex (2,2)"}}};
}

inline ExampleSpec bony() {
  return {"bony",
          "bony-attractor base system",
          IFSystem(BoxDomain::unit_interval(),
                   {pwl({{0.0, 0.0}, {0.6, 0.2}, {1.0, 0.8}}), pwl({{0.0, 0.15}, {0.4, 0.8}, {1.0, 1.0}})}),
          {{"swh_undetermined:12", "the periodic word 12 is not weakly hyperbolic"},
           {"target_covers:111,112,221,22222", "W-concatenations code the whole interval"}},
          {{1, "vertices (0,0) (0.6,0.2) (1,0.8)", Source::Published,
            "end vertex taken from the text; the figure draws (1,0.75)"},
           {2, "vertices (0,0.15) (0.4,0.8) (1,1)", Source::Published, ""}}};
}

inline ExampleSpec porcupine() {
  const double l = kPorcupineLambda;
  return {"porcupine",
          "porcupine-horseshoe base system",
          IFSystem(BoxDomain::unit_interval(), {Affine::line(-l, l), Quadratic1D{-1.0, 2.0, 0.0}}),
          {{"semifractal_full", "the closure of the target set is [0,1]"},
           {"swh_undetermined:2", "the constant word 2 is not weakly hyperbolic"},
           {"global_equivalence:BothHold", "the semifractal is X* and attracts globally"}},
          {{1, "f1 = lambda (1 - x)", Source::Published, ""},
           {1, "lambda = 0.8", Source::Instantiated,
            "uniform contraction of f2 on [f2^-1(lambda), 1] needs lambda > 3/4"},
           {2, "f2 = 2x - x^2", Source::Instantiated,
            "repelling fixed point 0, attracting fixed point 1, injective"}}};
}

inline ExampleSpec involution() {
  return {"involution",
          "identity and reflection",
          IFSystem(BoxDomain::unit_interval(), {Affine::line(1.0, 0.0), Affine::line(-1.0, 1.0)}),
          {{"swh_empty", "no word is weakly hyperbolic"},
           {"no_minimum_fixed_point", "{x, 1-x} is fixed for every x"}},
          {{1, "f1 = x", Source::Published, ""}, {2, "f2 = 1 - x", Source::Published, ""}}};
}

inline ExampleSpec nonregular() {
  return {"nonregular",
          "non-regular system with weakly hyperbolic words",
          IFSystem(BoxDomain::unit_interval(),
                   {Quadratic1D{-1.0, 2.0, 0.0},
                    pwl({{0.0, 0.02}, {0.05, 0.09}, {0.3, 0.2}, {0.45, 0.6}, {1.0, 0.75}})}),
          {{"swh_nonempty", "the splitting property yields weakly hyperbolic words"},
           {"two_fixed_points", "[0,1] and [p1,1] are both fixed by B"}},
          {{1, "f1 = 2x - x^2", Source::Instantiated, "fixed points 0 (repelling) and 1 (attracting)"},
           {2, "vertices (0,0.02) (0.05,0.09) (0.3,0.2) (0.45,0.6) (1,0.75)", Source::Instantiated,
            "image [0.02,0.75]; fixed points 0.1214, 0.36, 0.65625; the steep first piece puts the "
            "crossing with f1 at 0.0354, inside (alpha, p1)"}}};
}

inline ExampleSpec sierpinski() {
  return {"sierpinski",
          "Sierpinski triangle",
          IFSystem(BoxDomain::unit_square(),
                   {Affine::plane(0.5, 0, 0, 0.5, 0.0, 0.0), Affine::plane(0.5, 0, 0, 0.5, 0.5, 0.0),
                    Affine::plane(0.5, 0, 0, 0.5, 0.25, 0.5)}),
          {{"global_equivalence:BothHold", "hyperbolic: the attractor is global"}},
          {{1, "x/2", Source::Classical, "toward (0,0)"},
           {2, "x/2 + (1/2, 0)", Source::Classical, "toward (1,0)"},
           {3, "x/2 + (1/4, 1/2)", Source::Classical, "toward (1/2,1)"}}};
}

}  // namespace corpus

inline ExampleSpec load_example(std::string_view name) {
  if (name == "cantor_classic") return corpus::cantor_classic();
  if (name == "cantor_stable") return corpus::cantor_stable();
  if (name == "bony") return corpus::bony();
  if (name == "porcupine") return corpus::porcupine();
  if (name == "involution") return corpus::involution();
  if (name == "nonregular") return corpus::nonregular();
  if (name == "sierpinski") return corpus::sierpinski();
  throw UnknownExample("unknown example '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Hypothesis checks.

struct ConditionResult {
  std::string condition;
  bool holds = false;
  std::string detail;
};

struct ConditionsReport {
  std::string example;
  std::vector<ConditionResult> results;

  bool all_hold() const {
    return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.holds; });
  }
  const ConditionResult* failure() const {
    for (const auto& r : results)
      if (!r.holds) return &r;
    return nullptr;
  }
  std::vector<std::string> lines() const {
    std::vector<std::string> out;
    for (const auto& r : results)
      out.push_back("condition " + example + "/" + r.condition + ": " + (r.holds ? "Holds" : "Fails") +
                    (r.detail.empty() ? "" : " " + r.detail));
    return out;
  }
};

namespace detail {

inline std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

inline bool strictly_increasing(const MapDescriptor& f, const BoxDomain& dom, std::size_t samples = 4096) {
  double prev = eval(f, dom.lower(0));
  for (std::size_t i = 1; i <= samples; ++i) {
    const double x = dom.lower(0) + dom.extent(0) * static_cast<double>(i) / static_cast<double>(samples);
    const double y = eval(f, std::min(x, dom.upper(0)));
    if (!(y > prev)) return false;
    prev = y;
  }
  return true;
}

// Do the intervals cover [lo, hi] up to gaps of at most `gap`?
inline bool covers(std::vector<Interval> parts, double lo, double hi, double gap) {
  std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  double reach = lo;
  for (const auto& p : parts) {
    if (p.lo > reach + gap) return false;
    reach = std::max(reach, p.hi);
  }
  return reach >= hi - gap;
}

class ConditionLog {
 public:
  explicit ConditionLog(std::string example) { report_.example = std::move(example); }
  void add(std::string condition, bool holds, std::string detail = {}) {
    report_.results.push_back({std::move(condition), holds, std::move(detail)});
  }
  ConditionsReport take() { return std::move(report_); }

 private:
  ConditionsReport report_;
};

inline std::string describe(const std::vector<FixedPoint1D>& fps) {
  std::string out = "fixed=[";
  for (std::size_t i = 0; i < fps.size(); ++i) {
    if (i) out += ",";
    out += num(fps[i].x) + ":" + std::string(to_string(fps[i].kind));
    if (fps[i].continuum) out += "+";
  }
  return out + "]";
}

inline bool kinds_are(const std::vector<FixedPoint1D>& fps, std::initializer_list<FixedPointKind> kinds) {
  if (fps.size() != kinds.size()) return false;
  std::size_t i = 0;
  for (auto k : kinds)
    if (fps[i].continuum || fps[i++].kind != k) return false;
  return true;
}

inline void verify_cantor_classic(const ExampleSpec& e, ConditionLog& log) {
  const auto& s = e.system;
  const Box dom = s.domain().box();
  for (std::size_t i = 1; i <= 2; ++i)
    log.add("f" + std::to_string(i) + "_contraction",
            std::abs(lipschitz_bound(s.map(i), dom) - 1.0 / 3.0) < 1e-12,
            "lipschitz=" + num(lipschitz_bound(s.map(i), dom)));
  const Box a = s.image(1, dom), b = s.image(2, dom);
  log.add("images_disjoint", a[0].hi < b[0].lo,
          "f1(X)=[" + num(a[0].lo) + "," + num(a[0].hi) + "] f2(X)=[" + num(b[0].lo) + "," + num(b[0].hi) + "]");
}

inline void verify_cantor_stable(const ExampleSpec& e, ConditionLog& log) {
  const auto& s = e.system;
  const Box dom = s.domain().box();
  log.add("f1_contraction", lipschitz_bound(s.map(1), dom) < 1.0,
          "lipschitz=" + num(lipschitz_bound(s.map(1), dom)));
  log.add("f2_non_expanding", lipschitz_bound(s.map(2), dom) <= 1.0,
          "lipschitz=" + num(lipschitz_bound(s.map(2), dom)));
  bool identity = true;
  for (int i = 0; i <= 1000; ++i) {
    const double x = 1.0 + i / 1000.0;
    identity = identity && eval(s.map(2), x) == x;
  }
  log.add("f2_identity_on_[1,2]", identity);
  const Box unit = Box::of({0.0, 1.0});
  log.add("unit_interval_invariant",
          unit.contains(s.image(1, unit)) && unit.contains(s.image(2, unit)));
  const auto classic = corpus::cantor_classic().system;
  bool agrees = true;
  for (int i = 0; i <= 1000; ++i) {
    const double x = i / 1000.0;
    for (std::size_t m = 1; m <= 2; ++m)
      agrees = agrees && std::abs(eval(s.map(m), x) - eval(classic.map(m), x)) < 1e-15;
  }
  log.add("restriction_is_cantor_system", agrees);
}

inline void verify_bony(const ExampleSpec& e, ConditionLog& log, double cell) {
  const auto& s = e.system;
  const Box dom = s.domain().box();
  log.add("f1_increasing", strictly_increasing(s.map(1), s.domain()));
  log.add("f2_increasing", strictly_increasing(s.map(2), s.domain()));

  const auto f12 = compose({s.map(1), s.map(2)});
  const auto fps = fixed_points_1d(f12, s.domain());
  const bool repelling = std::any_of(fps.begin(), fps.end(), [](const auto& p) {
    return p.kind == FixedPointKind::Repelling && p.expansion > 1.0;
  });
  log.add("f1f2_repelling_fixed_point", repelling, describe(fps));

  const std::vector<std::vector<std::size_t>> words{{1, 1, 1}, {1, 1, 2}, {2, 2, 1}, {2, 2, 2, 2, 2}};
  std::vector<Interval> images;
  for (const auto& w : words) {
    std::vector<MapDescriptor> parts;
    std::string name;
    for (auto sym : w) {
      parts.push_back(s.map(sym));
      name += std::to_string(sym);
    }
    const auto f = compose(parts);
    const double lip = lipschitz_bound(f, dom);
    log.add("W" + name + "_contraction", lip < 1.0, "lipschitz=" + num(lip));
    images.push_back(interval_image(f, dom)[0]);
  }
  log.add("W_images_cover", covers(images, 0.0, 1.0, cell));
}

inline void verify_porcupine(const ExampleSpec& e, ConditionLog& log) {
  const auto& s = e.system;
  const double lambda = -std::get<Affine>(s.map(1).variant()).matrix[0];
  const bool form = std::get<Affine>(s.map(1).variant()).offset[0] == lambda;
  log.add("f1_form", form && lambda > 0.0 && lambda < 1.0, "lambda=" + num(lambda));
  log.add("f2_injective", strictly_increasing(s.map(2), s.domain()));
  const auto fps = fixed_points_1d(s.map(2), s.domain());
  log.add("f2_fixed_points", kinds_are(fps, {FixedPointKind::Repelling, FixedPointKind::Attracting}) &&
                                 fps[0].x == 0.0 && fps[1].x == 1.0,
          describe(fps));
  const double pre = inverse_increasing(s.map(2), s.domain(), lambda);
  const double lip = lipschitz_bound(s.map(2), Box::of({pre, 1.0}));
  log.add("f2_contracts_near_1", lip < 1.0, "f2^-1(lambda)=" + num(pre) + " lipschitz=" + num(lip));
  const double p = lambda / (1.0 + lambda);
  log.add("f1_fixed_point", std::abs(eval(s.map(1), p) - p) < 1e-15, "p=" + num(p));
}

inline void verify_involution(const ExampleSpec& e, ConditionLog& log) {
  const auto& s = e.system;
  const Box dom = s.domain().box();
  bool iso = true, invol = true, ident = true;
  for (int i = 0; i <= 1000; ++i) {
    const double x = i / 1000.0;
    ident = ident && eval(s.map(1), x) == x;
    invol = invol && std::abs(eval(s.map(2), eval(s.map(2), x)) - x) < 1e-15;
  }
  for (std::size_t m = 1; m <= 2; ++m) iso = iso && lipschitz_bound(s.map(m), dom) == 1.0;
  log.add("f1_identity", ident);
  log.add("f2_involution", invol);
  log.add("isometries", iso);
}

inline void verify_nonregular(const ExampleSpec& e, ConditionLog& log) {
  const auto& s = e.system;
  const auto& f1 = s.map(1);
  const auto& f2 = s.map(2);
  log.add("f1_injective", strictly_increasing(f1, s.domain()));
  log.add("f2_injective", strictly_increasing(f2, s.domain()));

  const auto fp1 = fixed_points_1d(f1, s.domain());
  log.add("f1_fixed_points",
          kinds_are(fp1, {FixedPointKind::Repelling, FixedPointKind::Attracting}) && fp1[0].x == 0.0 &&
              fp1[1].x == 1.0,
          describe(fp1));
  const auto fp2 = fixed_points_1d(f2, s.domain());
  const bool three =
      kinds_are(fp2, {FixedPointKind::Attracting, FixedPointKind::Repelling, FixedPointKind::Attracting});
  log.add("f2_fixed_points", three, describe(fp2));
  if (!three) return;
  const double p1 = fp2[0].x;

  const Interval range = interval_image(f2, s.domain().box())[0];
  const double alpha = range.lo, beta = range.hi;
  log.add("f2_image_inside", alpha > 0.0 && beta < 1.0,
          "alpha=" + num(alpha) + " beta=" + num(beta));
  const double f1p1 = eval(f1, p1);
  log.add("p1_f1p1_beta", p1 < f1p1 && f1p1 < beta, "p1=" + num(p1) + " f1(p1)=" + num(f1p1));

  // Single crossing of f1 and f2, located by bisection on f1 - f2.
  auto h = [&](double x) { return eval(f1, x) - eval(f2, x); };
  std::size_t sign_changes = 0;
  double c = -1.0;
  const std::size_t n = 1 << 14;
  double prev = h(0.0);
  for (std::size_t i = 1; i <= n; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(n);
    const double hx = h(x);
    if ((prev < 0.0) != (hx < 0.0) || hx == 0.0) {
      ++sign_changes;
      double l = x - 1.0 / static_cast<double>(n), r = x;
      for (int it = 0; it < 100; ++it) {
        const double m = 0.5 * (l + r);
        ((h(m) < 0.0) == (prev < 0.0) ? l : r) = m;
      }
      c = 0.5 * (l + r);
    }
    prev = hx;
  }
  log.add("single_crossing_in_(alpha,p1)", sign_changes == 1 && alpha < c && c < p1,
          "crossings=" + std::to_string(sign_changes) + " c=" + num(c));

  // Splitting: f1^n(f2(X)) eventually leaves f2(X).
  Box b = s.image(2, s.domain().box());
  std::size_t steps = 0;
  while (b[0].lo <= beta && steps < 1000) {
    b = s.image(1, b);
    ++steps;
  }
  log.add("splitting", b[0].lo > beta, "n=" + std::to_string(steps));
}

inline void verify_sierpinski(const ExampleSpec& e, ConditionLog& log) {
  const auto& s = e.system;
  const Box dom = s.domain().box();
  for (std::size_t i = 1; i <= s.size(); ++i)
    log.add("f" + std::to_string(i) + "_contraction", std::abs(lipschitz_bound(s.map(i), dom) - 0.5) < 1e-12);
}

}  // namespace detail

/// Numerically checks the hypotheses the named example is built on. `cell`
/// is the covering slack; zero means 1/16384 of the domain width.
inline ConditionsReport verify_example_conditions(std::string_view name, double cell = 0.0) {
  const ExampleSpec e = load_example(name);
  if (cell <= 0.0) cell = e.system.domain().extent(0) / 16384.0;
  detail::ConditionLog log(e.name);
  if (name == "cantor_classic") detail::verify_cantor_classic(e, log);
  else if (name == "cantor_stable") detail::verify_cantor_stable(e, log);
  else if (name == "bony") detail::verify_bony(e, log, cell);
  else if (name == "porcupine") detail::verify_porcupine(e, log);
  else if (name == "involution") detail::verify_involution(e, log);
  else if (name == "nonregular") detail::verify_nonregular(e, log);
  else detail::verify_sierpinski(e, log);
  return log.take();
}

}  // namespace nhifs
