#pragma once

// Set files, image renders and CSV numbers.
//
// Set files. A 1D set is one line of text,
//     rle1d <lo> <hi> <cells> <run> <run> ...
// where runs alternate between unset and set cells, starting with unset
// (the first run may be 0). A 2D set is a binary PGM (P5) whose header
// carries a comment "# nhifs-domain <xlo> <ylo> <xhi> <yhi>"; set cells are
// black, the top row is the highest y.

#include <array>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nhifs/error.hpp"
#include "nhifs/geometry.hpp"
#include "nhifs/grid.hpp"

namespace nhifs {

/// 17 significant digits: enough to read the same double back.
inline std::string csv_number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

/// Height of the strip a 1D set is drawn as.
inline constexpr std::size_t kStripHeight = 32;

namespace detail {

inline std::string pgm_header(std::size_t w, std::size_t h, const std::string& comment) {
  std::string out = "P5\n";
  if (!comment.empty()) out += "# " + comment + "\n";
  return out + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
}

inline std::string domain_comment(const BoxDomain& d) {
  return "nhifs-domain " + csv_number(d.lower(0)) + " " + csv_number(d.lower(1)) + " " +
         csv_number(d.upper(0)) + " " + csv_number(d.upper(1));
}

// Pixel (x, y) of an image of the grid, y = 0 at the top.
inline bool pixel_set(const GridSet& a, std::size_t x, std::size_t y) {
  const Grid& g = a.grid();
  if (g.dimension() == 1) return a.contains(x);
  return a.contains(g.index(x, g.cells(1) - 1 - y));
}

inline std::pair<std::size_t, std::size_t> image_size(const Grid& g) {
  return {g.cells(0), g.dimension() == 1 ? kStripHeight : g.cells(1)};
}

}  // namespace detail

/// Greyscale render: set cells black on white. 1D sets become a strip.
inline std::string render_pgm(const GridSet& a) {
  const Grid& g = a.grid();
  const auto [w, h] = detail::image_size(g);
  std::string out = detail::pgm_header(w, h, g.dimension() == 2 ? detail::domain_comment(g.domain()) : "");
  out.reserve(out.size() + w * h);
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x) out.push_back(detail::pixel_set(a, x, y) ? '\0' : '\xff');
  return out;
}

/// Two-channel overlay: red where A is set, green where B is set.
inline std::string render_overlay_ppm(const GridSet& a, const GridSet& b) {
  require_compatible(a.grid(), b.grid());
  const auto [w, h] = detail::image_size(a.grid());
  std::string out = "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  out.reserve(out.size() + 3 * w * h);
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x) {
      out.push_back(detail::pixel_set(a, x, y) ? '\xff' : '\0');
      out.push_back(detail::pixel_set(b, x, y) ? '\xff' : '\0');
      out.push_back('\0');
    }
  return out;
}

inline std::string encode_set(const GridSet& a) {
  const Grid& g = a.grid();
  if (g.dimension() == 2) return render_pgm(a);
  std::string out = "rle1d " + csv_number(g.domain().lower(0)) + " " + csv_number(g.domain().upper(0)) +
                    " " + std::to_string(g.size());
  const auto bits = a.bitmap();
  std::uint8_t current = 0;
  std::size_t run = 0;
  for (auto b : bits) {
    if (b != current) {
      out += " " + std::to_string(run);
      current = b;
      run = 0;
    }
    ++run;
  }
  out += " " + std::to_string(run) + "\n";
  return out;
}

inline GridSet decode_set(const std::string& data) {
  std::istringstream in(data);
  std::string magic;
  in >> magic;
  if (magic == "rle1d") {
    double lo = 0, hi = 0;
    std::size_t cells = 0;
    if (!(in >> lo >> hi >> cells)) throw InvalidArgument("bad rle1d header");
    const Grid g(BoxDomain(lo, hi), cells);
    std::vector<std::uint8_t> bits;
    bits.reserve(cells);
    std::uint8_t current = 0;
    std::size_t run = 0;
    while (in >> run) {
      if (bits.size() + run > cells) throw InvalidArgument("rle1d runs exceed the cell count");
      bits.insert(bits.end(), run, current);
      current ^= 1;
    }
    if (bits.size() != cells) throw InvalidArgument("rle1d runs do not add up to the cell count");
    return GridSet::from_bitmap(g, std::move(bits));
  }
  if (magic == "P5") {
    std::string token;
    std::optional<BoxDomain> domain;
    std::vector<std::size_t> dims;
    while (dims.size() < 3 && in >> token) {
      if (token == "#") {
        std::string line;
        std::getline(in, line);
        std::istringstream c(line);
        std::string tag;
        std::array<double, 2> lo{}, hi{};
        if (c >> tag >> lo[0] >> lo[1] >> hi[0] >> hi[1] && tag == "nhifs-domain") domain = BoxDomain(lo, hi);
        continue;
      }
      dims.push_back(std::stoul(token));
    }
    if (dims.size() != 3 || dims[2] != 255) throw InvalidArgument("bad PGM header");
    if (!domain) throw InvalidArgument("PGM lacks the nhifs-domain comment");
    in.get();
    const Grid g(*domain, {dims[0], dims[1]});
    std::vector<std::uint8_t> bits(g.size(), 0);
    for (std::size_t y = 0; y < dims[1]; ++y)
      for (std::size_t x = 0; x < dims[0]; ++x) {
        const int px = in.get();
        if (px == EOF) throw InvalidArgument("truncated PGM");
        bits[g.index(x, dims[1] - 1 - y)] = px < 128;
      }
    return GridSet::from_bitmap(g, std::move(bits));
  }
  throw InvalidArgument("unrecognised set file");
}

inline void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << bytes;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace nhifs
