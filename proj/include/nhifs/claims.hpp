#pragma once

// Resolves the claim tags of corpus examples to concrete checks.
//
// A tag is "<check>" or "<check>:<argument>". For verdict-style checks the
// argument is the expected verdict; for the others it parameterises the
// check (a periodic word, a block list).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nhifs/attractors.hpp"
#include "nhifs/chaos.hpp"
#include "nhifs/corpus.hpp"
#include "nhifs/distance.hpp"
#include "nhifs/error.hpp"
#include "nhifs/fixed_points.hpp"
#include "nhifs/grid.hpp"
#include "nhifs/hutchinson.hpp"
#include "nhifs/symbolic.hpp"
#include "nhifs/word.hpp"

namespace nhifs {

struct ClaimBudget {
  std::size_t grid_1d = 1 << 14;
  std::size_t grid_2d = 512;
  double tol_cells = 4.0;          ///< tolerance in cells
  std::size_t steps = 200;         ///< BH iterations
  std::size_t max_len = 16;        ///< word length for certified seeds
  std::size_t orbit = 200'000;     ///< chaos-game length
  std::size_t certify_budget = 10'000;
  std::uint64_t seed = 1;
};

struct ClaimOutcome {
  std::string tag;
  bool consistent = false;
  std::string line;
};

/// Shared state for the checks of one example: the grid and, once needed,
/// the semifractal.
class ClaimContext {
 public:
  ClaimContext(const ExampleSpec& e, ClaimBudget budget)
      : spec_(e), budget_(budget), grid_(e.system.domain(), e.system.dimension() == 1 ? budget.grid_1d : budget.grid_2d) {}

  const IFSystem& system() const { return spec_.system; }
  const Grid& grid() const { return grid_; }
  const ClaimBudget& budget() const { return budget_; }
  double tol() const { return budget_.tol_cells * grid_.tolerance(); }

  /// Throws NoCertificate when no word of the budget length certifies.
  const GridSet& semifractal() {
    if (!semifractal_) {
      const auto sample = target_sample(system(), grid_, budget_.max_len, tol(), 1);
      if (sample.empty()) throw NoCertificate("S_wh empty at budget: no semifractal");
      semifractal_ = semifractal_approx(system(), sample.front(), grid_, budget_.steps, tol()).final_set;
    }
    return *semifractal_;
  }

  const StabilityReport& stability() {
    if (!stability_)
      stability_ = check_stability(system(), semifractal(), neighborhood(), budget_.steps);
    return *stability_;
  }

  double neighborhood() const { return 0.05 * spec_.system.domain().extent(0); }

  Point far_corner() const {
    const auto& d = spec_.system.domain();
    return d.dimension() == 1 ? Point::of(d.upper(0)) : Point::of(d.upper(0), d.upper(1));
  }

 private:
  const ExampleSpec& spec_;
  ClaimBudget budget_;
  Grid grid_;
  std::optional<GridSet> semifractal_;
  std::optional<StabilityReport> stability_;
};

namespace detail {

inline std::vector<Word> parse_blocks(std::string_view list) {
  std::vector<Word> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t end = std::min(list.find(',', start), list.size());
    out.push_back(Word::parse(list.substr(start, end - start)));
    start = end + 1;
  }
  return out;
}

inline ClaimOutcome verdict_claim(std::string tag, std::string_view expected, std::string line,
                                  std::string_view actual) {
  const bool ok = expected == actual;
  return {std::move(tag), ok, std::move(line)};
}

}  // namespace detail

inline ClaimOutcome check_claim(ClaimContext& ctx, const Claim& claim) {
  const std::string& tag = claim.tag;
  const auto colon = tag.find(':');
  const std::string_view check = std::string_view(tag).substr(0, colon);
  const std::string_view arg =
      colon == std::string::npos ? std::string_view{} : std::string_view(tag).substr(colon + 1);
  const auto& s = ctx.system();
  const auto& g = ctx.grid();
  const double tol = ctx.tol();
  const auto& b = ctx.budget();

  if (check == "sf_minimum") {
    std::vector<FixedPointRecord> candidates{max_fixed_point(s, g, b.steps, tol),
                                             fixed_point_record(s, ctx.semifractal(), tol)};
    const auto r = check_sf_minimum(s, ctx.semifractal(), candidates, tol);
    return {tag, r.holds && r.accepted > 0, r.line()};
  }
  if (check == "global_equivalence") {
    EquivalenceBudget eb{b.steps, b.max_len, 5, b.seed};
    const auto r = check_global_equivalences(s, g, eb, tol);
    return detail::verdict_claim(tag, arg, r.line(), to_string(r.verdict));
  }
  if (check == "conley") {
    const auto r = check_conley(s, ctx.semifractal(), ctx.neighborhood(), b.steps, tol);
    return detail::verdict_claim(tag, arg, r.line(), to_string(r.verdict));
  }
  if (check == "stability") {
    const auto& r = ctx.stability();
    return detail::verdict_claim(tag, arg, r.line(), to_string(r.verdict));
  }
  if (check == "chaos") {
    const auto r = verify_chaos_game(s, ctx.far_corner(), b.orbit, ctx.semifractal(), ctx.stability(),
                                     std::max(tol, 5.0 * g.tolerance()));
    return detail::verdict_claim(tag, arg, r.line(), r.passed() ? "Converges" : "Fails");
  }
  if (check == "lemma_dista") {
    const auto r = check_lemma_dista(s, ctx.semifractal(), GridSet::singleton(g, ctx.far_corner()),
                                     b.steps, tol);
    return {tag, r.holds, r.line()};
  }
  if (check == "swh_nonempty" || check == "swh_empty") {
    const auto sample = target_sample(s, g, b.max_len, tol, 1);
    const bool empty = sample.empty();
    std::string line = std::string(check) + ": " + (empty ? "Empty" : "NonEmpty") +
                       " max_len=" + std::to_string(b.max_len);
    if (!empty) line += " word=" + sample.front().word.to_string();
    return {tag, empty == (check == "swh_empty"), line};
  }
  if (check == "swh_undetermined") {
    const double eps = 0.01 * s.domain().extent(0);
    const auto cert = certify_weak_hyperbolic(s, SymbolStream::periodic(Word::parse(arg)), eps, b.certify_budget);
    return {tag, !cert.has_value(),
            "certify(" + std::string(arg) + "): " + (cert ? "Certified" : "Undetermined") +
                " eps=" + detail::fmt(eps) + " budget=" + std::to_string(b.certify_budget)};
  }
  if (check == "target_covers") {
    // Coverage needs concatenations well past length 20 near the slowly
    // contracting word 112221; 40 suffices at eps = 0.01.
    const auto blocks = detail::parse_blocks(arg);
    const auto pts = target_sample_blocks(s, g, blocks, 40, 0.01);
    std::vector<Point> ps;
    for (const auto& p : pts) ps.push_back(p.point);
    const double cover = pts.empty() ? s.domain().box().diameter() : one_sided(GridSet::full(g), GridSet::from_points(g, ps));
    return {tag, cover <= 0.01,
            "target_covers: " + std::string(cover <= 0.01 ? "Holds" : "Fails") +
                " points=" + std::to_string(pts.size()) + " gap=" + detail::fmt(cover)};
  }
  if (check == "semifractal_full") {
    const double d = hausdorff(ctx.semifractal(), GridSet::full(g));
    return {tag, d <= tol, "semifractal_full: " + std::string(d <= tol ? "Holds" : "Fails") + " d_H=" + detail::fmt(d)};
  }
  if (check == "no_minimum_fixed_point") {
    const auto a = GridSet::from_points(g, std::vector<Point>{Point::of(0.25), Point::of(0.75)});
    const auto c = GridSet::from_points(g, std::vector<Point>{Point::of(0.3), Point::of(0.7)});
    const double ra = fixed_point_residual(s, a), rc = fixed_point_residual(s, c);
    const bool disjoint = !a.intersect(c).has_value();
    const bool ok = ra <= g.tolerance() && rc <= g.tolerance() && disjoint;
    return {tag, ok,
            "no_minimum_fixed_point: " + std::string(ok ? "Holds" : "Fails") + " residuals=" +
                detail::fmt(ra) + "," + detail::fmt(rc) + " disjoint=" + (disjoint ? "yes" : "no")};
  }
  if (check == "two_fixed_points") {
    const auto fps = fixed_points_1d(s.map(2), s.domain());
    const double p1 = fps.front().x;
    const GridSet whole = GridSet::full(g);
    const GridSet upper = GridSet::from_boxes(g, std::vector<Box>{Box::of({p1, s.domain().upper(0)})});
    const double rw = fixed_point_residual(s, whole), ru = fixed_point_residual(s, upper);
    const double apart = hausdorff(whole, upper);
    const bool ok = rw <= tol && ru <= tol && apart > tol;
    return {tag, ok,
            "two_fixed_points: " + std::string(ok ? "Holds" : "Fails") + " p1=" + detail::fmt(p1) +
                " residuals=" + detail::fmt(rw) + "," + detail::fmt(ru) + " apart=" + detail::fmt(apart)};
  }
  throw InvalidArgument("unknown claim tag '" + tag + "'");
}

/// Every claim of the example plus its hypothesis checks.
inline std::vector<ClaimOutcome> verify_claims(const ExampleSpec& e, const ClaimBudget& budget = {}) {
  std::vector<ClaimOutcome> out;
  for (const auto& line_result : verify_example_conditions(e.name).results)
    out.push_back({"condition:" + line_result.condition, line_result.holds,
                   "condition " + line_result.condition + ": " + (line_result.holds ? "Holds" : "Fails") +
                       (line_result.detail.empty() ? "" : " " + line_result.detail)});
  ClaimContext ctx(e, budget);
  for (const auto& c : e.claims) out.push_back(check_claim(ctx, c));
  return out;
}

}  // namespace nhifs
