#include <catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace nhifs;

namespace {

std::string config_path(const std::string& name) { return std::string(NHIFS_CONFIG_DIR) + "/" + name + ".cfg"; }

}  // namespace

TEST_CASE("a two-map Cantor config") {
  const auto c = parse_config("domain 1 0 1\nmap a affine 1/3 0\nmap b affine 1/3 2/3\n");
  CHECK(c.system.size() == 2);
  CHECK(c.system == corpus::cantor_classic().system);
  CHECK(c.map_names == std::vector<std::string>{"a", "b"});
}

TEST_CASE("run settings and comments") {
  const auto c = parse_config(
      "# header\n"
      "domain 2 0 0 1 1   # unit square\n"
      "map s affine 0.5 0 0 0.5 0 0\n"
      "map t affine 0.5 0 0 0.5 0.5 0.5\n"
      "map u compose s t\n"
      "ifs s u\n"
      "weights 0.25 0.75\n"
      "grid 256\ntol 0.01\nsteps 40\nseed 9\n");
  CHECK(c.system.size() == 2);
  CHECK(c.map_names == std::vector<std::string>{"s", "u"});
  CHECK(c.run.grid == std::optional<std::size_t>{256});
  CHECK(c.run.tol == std::optional<double>{0.01});
  CHECK(c.run.steps == std::optional<std::size_t>{40});
  CHECK(c.run.seed == std::optional<std::uint64_t>{9});
  CHECK(c.system.weights() == std::vector<double>{0.25, 0.75});
  const Point p = c.system.eval(2, Point::of(1.0, 1.0));
  CHECK(p[0] == 0.5);
  CHECK(p[1] == 0.5);
}

TEST_CASE("config errors name the line and the problem") {
  const std::string maps = "domain 1 0 1\nmap a affine 1/3 0\nmap b affine 1/3 2/3\n";
  CHECK_THROWS_WITH(parse_config(maps + "weights 0.5 0.6\n"), Catch::Matchers::ContainsSubstring("weights sum 1.1"));
  try {
    parse_config(maps + "weights 0.5 0.6\n");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 4);
  }
  CHECK_THROWS_WITH(parse_config("domain 1 0 1\nmap big affine 2 0\n"),
                    Catch::Matchers::ContainsSubstring("big") && Catch::Matchers::ContainsSubstring("line 2"));
  CHECK_THROWS_AS(parse_config("map a affine 1 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("domain 1 0 1\nmap a affine x 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("domain 1 0 1\nmap a warp 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("domain 1 0 1\nmap a affine 1 0\nifs b\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("domain 1 0 1\nmap a affine 1 0\ngrid 1000\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("domain 1 0 1\nmap a affine 1 0\ntol -1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("domain 1 0 1\nmap a pwl (0,0) (0.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("domain 3 0 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("domain 1 0 1\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/file.cfg"), ConfigError);
}

TEST_CASE("resolution rule") {
  CHECK_NOTHROW(validate_resolution(1, 256));
  CHECK_NOTHROW(validate_resolution(1, 1 << 20));
  CHECK_THROWS_AS(validate_resolution(1, 128), InvalidArgument);
  CHECK_THROWS_AS(validate_resolution(1, 1000), InvalidArgument);
  CHECK_THROWS_AS(validate_resolution(1, std::size_t{1} << 21), InvalidArgument);
  CHECK_NOTHROW(validate_resolution(2, 2048));
  CHECK_THROWS_AS(validate_resolution(2, 4096), InvalidArgument);
}

TEST_CASE("shipped configs equal the built-in examples") {
  for (const auto& name : example_names()) {
    INFO(name);
    const auto c = load_config(config_path(name));
    CHECK(c.system == load_example(name).system);
  }
}

TEST_CASE("written configs read back identically") {
  for (const auto& name : example_names()) {
    INFO(name);
    const auto e = load_example(name);
    RunConfig run;
    run.steps = 77;
    const auto back = parse_config(to_config(e.system, run));
    CHECK(back.system == e.system);
    CHECK(back.run.steps == std::optional<std::size_t>{77});
  }
  const IFSystem nested(BoxDomain::unit_interval(),
                        {compose({corpus::pwl({{0, 0}, {0.5, 0.2}, {1, 1}}), MapDescriptor(Affine::line(0.5, 0.25))}),
                         MapDescriptor(Quadratic1D{-1, 2, 0})},
                        std::vector<double>{0.4, 0.6});
  CHECK(parse_config(to_config(nested)).system == nested);
}
