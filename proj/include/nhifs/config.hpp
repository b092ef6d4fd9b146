#pragma once

// Line-oriented configuration files.
//
//   # comment
//   domain 1 <lo> <hi>                 domain 2 <xlo> <ylo> <xhi> <yhi>
//   map <name> affine <a> <b>          x -> a x + b (1D)
//   map <name> affine a11 a12 a21 a22 b1 b2
//   map <name> pwl (x0,y0) (x1,y1) ...
//   map <name> quad <a> <b> <c>        x -> a x^2 + b x + c
//   map <name> compose <n1> <n2> ...   n1 o n2 o ... (the last is applied first)
//   ifs <n1> <n2> ...                  maps of the system (default: all, in order)
//   weights <p1> ... <pk>
//   grid <cells>   tol <v>   steps <n>   seed <u64>
//
// Numbers may be written as fractions such as 2/3.

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nhifs/error.hpp"
#include "nhifs/geometry.hpp"
#include "nhifs/grid.hpp"
#include "nhifs/ifs.hpp"
#include "nhifs/map.hpp"

namespace nhifs {

struct RunConfig {
  std::optional<std::size_t> grid;  ///< cells per axis
  std::optional<double> tol;
  std::optional<std::size_t> steps;
  std::optional<std::uint64_t> seed;
};

struct ParsedConfig {
  IFSystem system;
  RunConfig run;
  std::vector<std::string> map_names;  ///< names of the system's maps, in order
};

/// Resolution rule for runs: a power of two in [2^8, 2^20] cells in 1D, at
/// most 2048 cells per axis in 2D.
inline void validate_resolution(int dim, std::size_t cells) {
  if (dim == 1) {
    const bool pow2 = cells != 0 && (cells & (cells - 1)) == 0;
    if (!pow2 || cells < (1u << 8) || cells > (1u << 20))
      throw InvalidArgument("1D grid must be a power of two between 256 and 1048576 cells");
  } else if (cells < 1 || cells > Grid::kMaxCells2D) {
    throw InvalidArgument("2D grid must have between 1 and 2048 cells per axis");
  }
}

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::optional<double> plain_number(std::string_view s) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

class LineParser {
 public:
  LineParser(std::size_t line, std::vector<std::string_view> tokens)
      : line_(line), tokens_(std::move(tokens)) {}

  [[noreturn]] void fail(const std::string& what) const { throw ConfigError(line_, what); }

  std::size_t remaining() const { return tokens_.size() - pos_; }
  std::string_view word(const char* what) {
    if (pos_ >= tokens_.size()) fail(std::string("expected ") + what);
    return tokens_[pos_++];
  }

  double number(const char* what) {
    const std::string_view t = word(what);
    return to_number(t, what);
  }

  double to_number(std::string_view t, const char* what) const {
    const auto slash = t.find('/');
    std::optional<double> v;
    if (slash == std::string_view::npos) {
      v = plain_number(t);
    } else {
      const auto num = plain_number(t.substr(0, slash));
      const auto den = plain_number(t.substr(slash + 1));
      if (num && den && *den != 0.0) v = *num / *den;
    }
    if (!v) fail(std::string("bad ") + what + " '" + std::string(t) + "'");
    return *v;
  }

  std::uint64_t integer(const char* what) {
    const std::string_view t = word(what);
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || p != t.data() + t.size())
      fail(std::string("bad ") + what + " '" + std::string(t) + "'");
    return v;
  }

  void done() const {
    if (pos_ != tokens_.size()) fail("unexpected '" + std::string(tokens_[pos_]) + "'");
  }

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
  std::vector<std::string_view> tokens_;
  std::size_t pos_ = 0;
};

inline Vertex parse_vertex(const LineParser& lp, std::string_view t) {
  if (t.size() < 5 || t.front() != '(' || t.back() != ')') lp.fail("vertex must look like (x,y)");
  const std::string_view body = t.substr(1, t.size() - 2);
  const auto comma = body.find(',');
  if (comma == std::string_view::npos) lp.fail("vertex must look like (x,y)");
  return {lp.to_number(body.substr(0, comma), "vertex x"), lp.to_number(body.substr(comma + 1), "vertex y")};
}

}  // namespace detail

inline ParsedConfig parse_config(std::string_view text) {
  std::optional<BoxDomain> domain;
  std::map<std::string, MapDescriptor, std::less<>> maps;
  std::vector<std::string> declared;
  std::vector<std::string> chosen;
  std::optional<std::vector<double>> weights;
  std::size_t weights_line = 0;
  std::size_t ifs_line = 0;
  RunConfig run;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    auto tokens = detail::split_ws(raw);
    if (tokens.empty()) continue;
    detail::LineParser lp(line_no, std::move(tokens));
    const std::string_view key = lp.word("keyword");

    if (key == "domain") {
      if (domain) lp.fail("domain given twice");
      const auto dim = lp.integer("dimension");
      try {
        if (dim == 1) {
          const double lo = lp.number("lower bound");
          const double hi = lp.number("upper bound");
          domain = BoxDomain(lo, hi);
        } else if (dim == 2) {
          std::array<double, 2> lo{}, hi{};
          lo[0] = lp.number("lower x");
          lo[1] = lp.number("lower y");
          hi[0] = lp.number("upper x");
          hi[1] = lp.number("upper y");
          domain = BoxDomain(lo, hi);
        } else {
          lp.fail("dimension must be 1 or 2");
        }
      } catch (const InvalidArgument& e) {
        lp.fail(e.what());
      }
      lp.done();
    } else if (key == "map") {
      if (!domain) lp.fail("map before domain");
      const std::string name(lp.word("map name"));
      if (maps.count(name)) lp.fail("map '" + name + "' defined twice");
      const std::string_view kind = lp.word("map kind");
      std::optional<MapDescriptor> m;
      try {
        if (kind == "affine") {
          if (domain->dimension() == 1) {
            const double a = lp.number("slope");
            const double b = lp.number("intercept");
            m = MapDescriptor(Affine::line(a, b));
          } else {
            std::array<double, 6> v{};
            for (auto& x : v) x = lp.number("affine coefficient");
            m = MapDescriptor(Affine::plane(v[0], v[1], v[2], v[3], v[4], v[5]));
          }
        } else if (kind == "pwl") {
          PiecewiseLinear1D p;
          while (lp.remaining()) p.vertices.push_back(detail::parse_vertex(lp, lp.word("vertex")));
          m = MapDescriptor(std::move(p));
        } else if (kind == "quad") {
          Quadratic1D q;
          q.a = lp.number("coefficient a");
          q.b = lp.number("coefficient b");
          q.c = lp.number("coefficient c");
          m = MapDescriptor(q);
        } else if (kind == "compose") {
          std::vector<MapDescriptor> parts;
          while (lp.remaining()) {
            const std::string_view part = lp.word("map name");
            const auto it = maps.find(part);
            if (it == maps.end()) lp.fail("unknown map '" + std::string(part) + "'");
            parts.push_back(it->second);
          }
          m = compose(std::move(parts));
        } else {
          lp.fail("unknown map kind '" + std::string(kind) + "'");
        }
        lp.done();
        if (m->dimension() != domain->dimension()) lp.fail("map '" + name + "' has the wrong dimension");
        IFSystem(*domain, {*m});
      } catch (const InvalidArgument& e) {
        lp.fail("map '" + name + "': " + e.what());
      } catch (const DomainViolation& e) {
        lp.fail("map '" + name + "': " + e.what());
      }
      maps.emplace(name, std::move(*m));
      declared.push_back(name);
    } else if (key == "ifs") {
      if (ifs_line) lp.fail("ifs given twice");
      ifs_line = line_no;
      while (lp.remaining()) {
        const std::string name(lp.word("map name"));
        if (!maps.count(name)) lp.fail("unknown map '" + name + "'");
        chosen.push_back(name);
      }
      if (chosen.empty()) lp.fail("ifs needs at least one map");
    } else if (key == "weights") {
      if (weights) lp.fail("weights given twice");
      weights_line = line_no;
      weights.emplace();
      while (lp.remaining()) weights->push_back(lp.number("weight"));
    } else if (key == "grid") {
      run.grid = lp.integer("cell count");
      lp.done();
    } else if (key == "tol") {
      run.tol = lp.number("tolerance");
      if (!(*run.tol > 0.0)) lp.fail("tolerance must be positive");
      lp.done();
    } else if (key == "steps") {
      run.steps = lp.integer("step count");
      lp.done();
    } else if (key == "seed") {
      run.seed = lp.integer("seed");
      lp.done();
    } else {
      lp.fail("unknown keyword '" + std::string(key) + "'");
    }
  }

  if (!domain) throw ConfigError(line_no, "missing domain");
  if (chosen.empty()) chosen = declared;
  if (chosen.empty()) throw ConfigError(line_no, "no maps defined");
  if (run.grid) {
    try {
      validate_resolution(domain->dimension(), *run.grid);
    } catch (const InvalidArgument& e) {
      throw ConfigError(line_no, e.what());
    }
  }
  std::vector<MapDescriptor> selected;
  for (const auto& n : chosen) selected.push_back(maps.at(n));
  try {
    return {IFSystem(*domain, std::move(selected), std::move(weights)), run, chosen};
  } catch (const InvalidArgument& e) {
    throw ConfigError(weights_line ? weights_line : (ifs_line ? ifs_line : line_no), e.what());
  }
}

inline ParsedConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace detail {

inline std::string exact(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

inline void write_map(std::ostream& os, const std::string& name, const MapDescriptor& f,
                      std::size_t& counter) {
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Affine>) {
          os << "map " << name << " affine";
          if (m.dim == 1) {
            os << ' ' << exact(m.matrix[0]) << ' ' << exact(m.offset[0]);
          } else {
            for (double v : m.matrix) os << ' ' << exact(v);
            os << ' ' << exact(m.offset[0]) << ' ' << exact(m.offset[1]);
          }
        } else if constexpr (std::is_same_v<T, PiecewiseLinear1D>) {
          os << "map " << name << " pwl";
          for (const auto& v : m.vertices) os << " (" << exact(v.x) << ',' << exact(v.y) << ')';
        } else if constexpr (std::is_same_v<T, Quadratic1D>) {
          os << "map " << name << " quad " << exact(m.a) << ' ' << exact(m.b) << ' ' << exact(m.c);
        } else {
          std::vector<std::string> parts;
          for (const auto& p : m.parts) {
            parts.push_back(name + "_" + std::to_string(++counter));
            write_map(os, parts.back(), p, counter);
          }
          os << "map " << name << " compose";
          for (const auto& p : parts) os << ' ' << p;
        }
        os << '\n';
      },
      f.variant());
}

}  // namespace detail

/// Config text that parses back to an equal system; maps are named f1..fk.
inline std::string to_config(const IFSystem& s, const RunConfig& run = {}) {
  std::ostringstream os;
  const auto& d = s.domain();
  if (d.dimension() == 1) {
    os << "domain 1 " << detail::exact(d.lower(0)) << ' ' << detail::exact(d.upper(0)) << '\n';
  } else {
    os << "domain 2 " << detail::exact(d.lower(0)) << ' ' << detail::exact(d.lower(1)) << ' '
       << detail::exact(d.upper(0)) << ' ' << detail::exact(d.upper(1)) << '\n';
  }
  std::size_t counter = 0;
  bool composite = false;
  for (std::size_t i = 1; i <= s.size(); ++i) {
    detail::write_map(os, "f" + std::to_string(i), s.map(i), counter);
    composite = composite || std::holds_alternative<Composite>(s.map(i).variant());
  }
  if (composite) {
    os << "ifs";
    for (std::size_t i = 1; i <= s.size(); ++i) os << " f" << i;
    os << '\n';
  }
  if (s.weights()) {
    os << "weights";
    for (double w : *s.weights()) os << ' ' << detail::exact(w);
    os << '\n';
  }
  if (run.grid) os << "grid " << *run.grid << '\n';
  if (run.tol) os << "tol " << detail::exact(*run.tol) << '\n';
  if (run.steps) os << "steps " << *run.steps << '\n';
  if (run.seed) os << "seed " << *run.seed << '\n';
  return os.str();
}

}  // namespace nhifs
