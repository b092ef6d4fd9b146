#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <string>

#include "nhifs/nhifs.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string output;
};

Run ifs(const std::string& args) {
  const std::string cmd = std::string(NHIFS_IFS_TOOL) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("nhifs_cli_" + name);
  fs::remove_all(p);
  return p;
}

std::string config(const std::string& name) { return std::string(NHIFS_CONFIG_DIR) + "/" + name + ".cfg"; }

}  // namespace

TEST_CASE("iterate writes a trace and a set") {
  const auto dir = scratch("iterate");
  const auto r = ifs("iterate --example cantor_classic --grid 4096 --out " + dir.string());
  CHECK(r.status == 0);
  CHECK(r.output.find("iterate: Converged") != std::string::npos);
  const auto csv = nhifs::read_file((dir / "iterate.csv").string());
  CHECK(csv.rfind("step,hausdorff,forward,backward\n", 0) == 0);
  const auto set = nhifs::decode_set(nhifs::read_file((dir / "iterate.set").string()));
  CHECK(set.grid().size() == 4096);
  CHECK(fs::exists(dir / "iterate.pgm"));

  const auto from = ifs("iterate --example cantor_classic --grid 4096 --from 0.5 --steps 3 --out " + dir.string());
  CHECK(from.status == 0);
}

TEST_CASE("verify reports the documented verdicts") {
  const auto dir = scratch("verify");
  const auto r = ifs("verify --example cantor_stable --out " + dir.string());
  INFO(r.output);
  CHECK(r.status == 0);
  CHECK(r.output.find("conley: FailsWithWitness") != std::string::npos);
  CHECK(r.output.find("stability: StableWitness") != std::string::npos);
  CHECK(nhifs::read_file((dir / "report.txt").string()).find("verify: consistent") != std::string::npos);
}

TEST_CASE("verify on a config checks the equivalence") {
  const auto r = ifs("verify --config " + config("cantor_classic") + " --grid 4096 --out " + scratch("vcfg").string());
  CHECK(r.status == 0);
  CHECK(r.output.find("global_equivalence: BothHold") != std::string::npos);
}

TEST_CASE("semifractal of the porcupine system fills the interval") {
  const auto dir = scratch("semi");
  const auto r = ifs("semifractal --example porcupine --tol 1e-3 --out " + dir.string());
  INFO(r.output);
  CHECK(r.status == 0);
  const auto set = nhifs::decode_set(nhifs::read_file((dir / "semifractal.set").string()));
  CHECK(nhifs::hausdorff(set, nhifs::GridSet::full(set.grid())) <= 1e-3);
}

TEST_CASE("chaos on the involution has no semifractal") {
  const auto r = ifs("chaos --example involution --out " + scratch("inv").string());
  CHECK(r.status == 3);
  CHECK(r.output.find("S_wh empty at budget: no semifractal") != std::string::npos);
}

TEST_CASE("chaos game output") {
  const auto dir = scratch("chaos");
  const auto r = ifs("chaos --example cantor_stable --grid 4096 --orbit 50000 --orbit-csv --out " + dir.string());
  INFO(r.output);
  CHECK(r.status == 0);
  CHECK(r.output.find("chaos_game: Converges") != std::string::npos);
  CHECK(nhifs::read_file((dir / "chaos.csv").string()).rfind("ell,hausdorff\n", 0) == 0);
  CHECK(nhifs::read_file((dir / "orbit.csv").string()).rfind("step,symbol,x\n", 0) == 0);
  CHECK(nhifs::read_file((dir / "overlay.ppm").string()).rfind("P6\n", 0) == 0);
}

TEST_CASE("target, maxfix, render and hausdorff") {
  const auto dir = scratch("misc");
  const auto t = ifs("target --example cantor_classic --max-len 8 --eps 0.01 --out " + dir.string());
  CHECK(t.status == 0);
  const auto csv = nhifs::read_file((dir / "target.csv").string());
  CHECK(csv.rfind("word,x,radius\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 33);

  CHECK(ifs("maxfix --config " + config("sierpinski") + " --grid 128 --out " + dir.string()).status == 0);
  const auto set = (dir / "maxfix.set").string();
  CHECK(ifs("render " + set + " --out " + dir.string()).status == 0);
  CHECK(fs::exists(dir / "render.pgm"));
  CHECK(ifs("render " + set + " " + set + " --out " + dir.string()).status == 0);
  const auto h = ifs("hausdorff " + set + " " + set);
  CHECK(h.status == 0);
  CHECK(h.output.rfind("hausdorff: 0 ", 0) == 0);
}

TEST_CASE("outputs are deterministic") {
  const auto a = scratch("det_a"), b = scratch("det_b");
  for (const auto& d : {a, b}) {
    REQUIRE(ifs("chaos --example cantor_classic --grid 4096 --orbit 20000 --seed 5 --out " + d.string()).status == 0);
    REQUIRE(ifs("iterate --example bony --grid 4096 --steps 5 --out " + d.string()).status == 0);
  }
  for (const auto& f : {"chaos.csv", "tail.set", "overlay.ppm", "iterate.csv", "iterate.pgm"})
    CHECK(nhifs::read_file((a / f).string()) == nhifs::read_file((b / f).string()));
}

TEST_CASE("exit codes for bad input") {
  CHECK(ifs("verify --example koch").status == 2);
  CHECK(ifs("iterate --example cantor_classic --grid 1000").status == 2);
  CHECK(ifs("iterate --example cantor_classic --tol 1e-9").status == 2);
  CHECK(ifs("iterate --config /nonexistent.cfg").status == 2);
  CHECK(ifs("iterate").status == 2);
  CHECK(ifs("frobnicate").status == 2);
  CHECK(ifs("target --example involution --out " + scratch("tinv").string()).status == 3);
}
