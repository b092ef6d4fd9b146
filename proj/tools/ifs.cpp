// ifs: command-line front end.
//
// Exit codes: 0 success, 1 a check failed, 2 bad configuration or input,
// 3 the budget ran out before a required verdict.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nhifs/nhifs.hpp"

namespace {

using namespace nhifs;

constexpr int kExitCheck = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;

struct Options {
  std::string example;
  std::string config;
  std::optional<std::size_t> grid;
  std::optional<double> tol;
  std::optional<std::size_t> steps;
  std::optional<std::uint64_t> seed;
  std::string out = ".";

  // command-specific
  std::string from = "full";
  std::size_t max_len = 16;
  std::optional<double> eps;
  std::optional<std::string> start;
  std::size_t orbit = 200'000;
  bool override_hypothesis = false;
  bool orbit_csv = false;
  std::vector<std::string> files;
};

class Budget : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CheckFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The system and run parameters after merging config values and flags.
struct Session {
  std::optional<ExampleSpec> spec;
  IFSystem system;
  Grid grid;
  double tol;
  std::size_t steps;
  std::uint64_t seed;
  std::filesystem::path out;

  std::string path(const std::string& name) const { return (out / name).string(); }
};

Session open_session(const Options& o) {
  if (o.example.empty() == o.config.empty())
    throw ConfigError(0, "give exactly one of --example and --config");
  std::optional<ExampleSpec> spec;
  RunConfig run;
  std::optional<IFSystem> system;
  if (!o.example.empty()) {
    spec = load_example(o.example);
    system = spec->system;
  } else {
    auto parsed = load_config(o.config);
    system = parsed.system;
    run = parsed.run;
  }
  const int dim = system->dimension();
  const std::size_t cells = o.grid.value_or(run.grid.value_or(dim == 1 ? 16384 : 512));
  try {
    validate_resolution(dim, cells);
  } catch (const InvalidArgument& e) {
    throw ConfigError(0, e.what());
  }
  Grid grid(system->domain(), cells);
  const double tol = o.tol.value_or(run.tol.value_or(4.0 * grid.tolerance()));
  if (tol < grid.cell_width(0) * (1.0 - 1e-12))
    throw ConfigError(0, "tolerance " + csv_number(tol) + " is below one cell width");
  std::filesystem::create_directories(o.out);
  return {spec,
          *system,
          grid,
          tol,
          o.steps.value_or(run.steps.value_or(200)),
          o.seed.value_or(run.seed.value_or(1)),
          o.out};
}

Point parse_point(const std::string& text, int dim) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) v.push_back(std::stod(part));
  if (static_cast<int>(v.size()) != dim) throw ConfigError(0, "point '" + text + "' has the wrong dimension");
  return dim == 1 ? Point::of(v[0]) : Point::of(v[0], v[1]);
}

Point far_corner(const IFSystem& s) {
  const auto& d = s.domain();
  return d.dimension() == 1 ? Point::of(d.upper(0)) : Point::of(d.upper(0), d.upper(1));
}

void write_trace(const std::string& path, const ConvergenceReport& r) {
  std::ofstream out(path);
  out << "step,hausdorff,forward,backward\n";
  for (const auto& s : r.steps)
    out << s.index << ',' << csv_number(s.hausdorff) << ',' << csv_number(s.forward) << ','
        << csv_number(s.backward) << '\n';
}

void write_set(const Session& ss, const std::string& stem, const GridSet& a) {
  write_file(ss.path(stem + ".set"), encode_set(a));
  write_file(ss.path(stem + ".pgm"), render_pgm(a));
}

GridSet semifractal_of(const Session& ss, std::size_t max_len) {
  const auto sample = target_sample(ss.system, ss.grid, max_len, ss.tol, 1);
  if (sample.empty()) throw Budget("S_wh empty at budget: no semifractal");
  return semifractal_approx(ss.system, sample.front(), ss.grid, ss.steps, ss.tol).final_set;
}

int cmd_iterate(const Options& o) {
  const Session ss = open_session(o);
  GridSet start = GridSet::full(ss.grid);
  if (o.from != "full") {
    if (std::filesystem::exists(o.from)) start = decode_set(read_file(o.from));
    else start = GridSet::singleton(ss.grid, parse_point(o.from, ss.system.dimension()));
  }
  const auto r = bh_iterate(ss.system, start, ss.steps, ss.tol);
  write_trace(ss.path("iterate.csv"), r);
  write_set(ss, "iterate", r.final_set);
  std::cout << "iterate: " << to_string(r.status) << " steps=" << r.steps.size()
            << " cells=" << r.final_set.count() << " last=" << csv_number(r.last_distance()) << '\n';
  return 0;
}

int cmd_maxfix(const Options& o) {
  const Session ss = open_session(o);
  const auto r = max_fixed_point(ss.system, ss.grid, ss.steps, ss.tol);
  write_trace(ss.path("maxfix.csv"), r.trace);
  write_set(ss, "maxfix", r.set);
  std::cout << "maxfix: " << to_string(r.status) << " cells=" << r.set.count()
            << " residual=" << csv_number(r.residual) << '\n';
  return r.status == ConvergenceStatus::Converged ? 0 : kExitBudget;
}

int cmd_target(const Options& o) {
  const Session ss = open_session(o);
  const double eps = o.eps.value_or(ss.tol);
  const auto pts = target_sample(ss.system, ss.grid, o.max_len, eps);
  std::ofstream out(ss.path("target.csv"));
  out << (ss.system.dimension() == 1 ? "word,x,radius\n" : "word,x,y,radius\n");
  for (const auto& p : pts) {
    out << p.word.to_string() << ',' << csv_number(p.point[0]);
    if (ss.system.dimension() == 2) out << ',' << csv_number(p.point[1]);
    out << ',' << csv_number(p.radius) << '\n';
  }
  std::cout << "target: points=" << pts.size() << " max_len=" << o.max_len << " eps=" << csv_number(eps) << '\n';
  if (pts.empty()) {
    std::cout << "S_wh empty at budget\n";
    return kExitBudget;
  }
  return 0;
}

int cmd_semifractal(const Options& o) {
  const Session ss = open_session(o);
  const auto sample = target_sample(ss.system, ss.grid, o.max_len, ss.tol, 1);
  if (sample.empty()) throw Budget("S_wh empty at budget: no semifractal");
  const auto r = semifractal_approx(ss.system, sample.front(), ss.grid, ss.steps, ss.tol);
  write_trace(ss.path("semifractal.csv"), r);
  write_set(ss, "semifractal", r.final_set);
  const auto xstar = max_fixed_point(ss.system, ss.grid, ss.steps, ss.tol).set;
  const double to_max = hausdorff(r.final_set, xstar);
  std::cout << "semifractal: " << to_string(r.status) << " seed=" << sample.front().word.to_string()
            << " cells=" << r.final_set.count() << " hausdorff_to_max_fixed=" << csv_number(to_max)
            << " within_tol=" << (to_max <= ss.tol ? "yes" : "no") << '\n';
  return 0;
}

int cmd_verify(const Options& o) {
  const Session ss = open_session(o);
  ClaimBudget budget;
  budget.grid_1d = budget.grid_2d = ss.grid.cells(0);
  budget.tol_cells = ss.tol / ss.grid.tolerance();
  budget.steps = ss.steps;
  budget.seed = ss.seed;
  budget.max_len = o.max_len;
  budget.orbit = o.orbit;

  std::vector<ClaimOutcome> outcomes;
  if (ss.spec) {
    outcomes = verify_claims(*ss.spec, budget);
  } else {
    // A user system has no recorded claims; only the equivalence must hold.
    EquivalenceBudget eb{ss.steps, o.max_len, 5, ss.seed};
    try {
      const auto r = check_global_equivalences(ss.system, ss.grid, eb, ss.tol);
      outcomes.push_back({"global_equivalence", r.verdict != EquivalenceVerdict::Inconsistent, r.line()});
    } catch (const NoCertificate& e) {
      throw Budget(e.what());
    }
  }
  std::ofstream report(ss.path("report.txt"));
  bool ok = true;
  for (const auto& c : outcomes) {
    std::cout << c.line << '\n';
    report << c.line << '\n';
    ok = ok && c.consistent;
  }
  const std::string summary = std::string("verify: ") + (ok ? "consistent" : "INCONSISTENT");
  std::cout << summary << '\n';
  report << summary << '\n';
  return ok ? 0 : kExitCheck;
}

int cmd_chaos(const Options& o) {
  const Session ss = open_session(o);
  const GridSet semifractal = semifractal_of(ss, o.max_len);
  const auto& d = ss.system.domain();
  const auto stability = check_stability(ss.system, semifractal, 0.05 * d.extent(0), ss.steps);
  if (stability.verdict != StabilityVerdict::StableWitness && !o.override_hypothesis)
    throw Budget("no stability witness at budget; rerun with --override-hypothesis");
  const Point x = o.start ? parse_point(*o.start, ss.system.dimension()) : far_corner(ss.system);
  const auto r = verify_chaos_game(ss.system, x, o.orbit, semifractal, stability, ss.tol, {},
                                   o.override_hypothesis);
  {
    std::ofstream out(ss.path("chaos.csv"));
    out << "ell,hausdorff\n";
    for (const auto& [ell, dist] : r.trace) out << ell << ',' << csv_number(dist) << '\n';
  }
  const GridSet tail = r.tails.tail(r.trace.back().first);
  write_set(ss, "tail", tail);
  write_file(ss.path("overlay.ppm"), render_overlay_ppm(semifractal, tail));
  if (o.orbit_csv) {
    const auto orbit = chaos_orbit(ss.system, x, SymbolStream::disjunctive(ss.system.size()), o.orbit);
    std::ofstream out(ss.path("orbit.csv"));
    out << (ss.system.dimension() == 1 ? "step,symbol,x\n" : "step,symbol,x,y\n");
    for (std::size_t n = 0; n < orbit.points.size(); ++n) {
      out << n << ',' << (n == 0 ? 0 : orbit.symbols[n - 1]) << ',' << csv_number(orbit.points[n][0]);
      if (ss.system.dimension() == 2) out << ',' << csv_number(orbit.points[n][1]);
      out << '\n';
    }
  }
  std::cout << r.line() << '\n';
  return r.passed() ? 0 : kExitCheck;
}

int cmd_render(const Options& o) {
  if (o.files.empty() || o.files.size() > 2) throw ConfigError(0, "render takes one or two set files");
  std::filesystem::create_directories(o.out);
  const GridSet a = decode_set(read_file(o.files[0]));
  if (o.files.size() == 1) {
    const auto path = (std::filesystem::path(o.out) / "render.pgm").string();
    write_file(path, render_pgm(a));
    std::cout << "render: " << path << '\n';
  } else {
    const GridSet b = decode_set(read_file(o.files[1]));
    const auto path = (std::filesystem::path(o.out) / "overlay.ppm").string();
    write_file(path, render_overlay_ppm(a, b));
    std::cout << "render: " << path << '\n';
  }
  return 0;
}

int cmd_hausdorff(const Options& o) {
  if (o.files.size() != 2) throw ConfigError(0, "hausdorff takes two set files");
  const GridSet a = decode_set(read_file(o.files[0]));
  const GridSet b = decode_set(read_file(o.files[1]));
  std::cout << "hausdorff: " << csv_number(hausdorff(a, b)) << " forward=" << csv_number(one_sided(a, b))
            << " backward=" << csv_number(one_sided(b, a)) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hutchinson operators, semifractals and the chaos game on grids"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--example", o.example, "built-in example name");
  app.add_option("--config", o.config, "config file");
  app.add_option("--grid", o.grid, "cells per axis");
  app.add_option("--tol", o.tol, "distance tolerance");
  app.add_option("--steps", o.steps, "iteration budget");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--out", o.out, "output directory");

  auto* iterate = app.add_subcommand("iterate", "iterate B and trace successive distances");
  iterate->add_option("--from", o.from, "start: full, a point x[,y], or a set file");
  auto* maxfix = app.add_subcommand("maxfix", "maximum fixed point from the whole domain");
  auto* target = app.add_subcommand("target", "certified points of the target set");
  target->add_option("--max-len", o.max_len, "word length budget");
  target->add_option("--eps", o.eps, "certificate diameter");
  auto* semifractal = app.add_subcommand("semifractal", "BH iteration from a certified point");
  semifractal->add_option("--max-len", o.max_len, "word length budget for the seed");
  auto* verify = app.add_subcommand("verify", "run every claim and hypothesis check");
  verify->add_option("--max-len", o.max_len, "word length budget");
  verify->add_option("--orbit", o.orbit, "chaos-game length");
  auto* chaos = app.add_subcommand("chaos", "deterministic chaos game against the semifractal");
  chaos->add_option("--x", o.start, "start point x[,y]");
  chaos->add_option("--orbit", o.orbit, "orbit length");
  chaos->add_option("--max-len", o.max_len, "word length budget for the seed");
  chaos->add_flag("--override-hypothesis", o.override_hypothesis, "run without a stability witness");
  chaos->add_flag("--orbit-csv", o.orbit_csv, "also write every orbit point");
  auto* render = app.add_subcommand("render", "render set files to PGM, or two as a PPM overlay");
  render->add_option("files", o.files, "set files")->required();
  auto* haus = app.add_subcommand("hausdorff", "distance between two set files");
  haus->add_option("files", o.files, "set files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*iterate) return cmd_iterate(o);
    if (*maxfix) return cmd_maxfix(o);
    if (*target) return cmd_target(o);
    if (*semifractal) return cmd_semifractal(o);
    if (*verify) return cmd_verify(o);
    if (*chaos) return cmd_chaos(o);
    if (*render) return cmd_render(o);
    if (*haus) return cmd_hausdorff(o);
  } catch (const Budget& e) {
    std::cerr << e.what() << '\n';
    return kExitBudget;
  } catch (const NoCertificate& e) {
    std::cerr << e.what() << '\n';
    return kExitBudget;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const UnknownExample& e) {
    std::cerr << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheck;
  }
  return 0;
}
