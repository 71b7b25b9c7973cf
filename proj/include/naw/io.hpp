#pragma once

// Text formats: points files ("<N> 3 points" header, whitespace-separated
// rows), triangle files with 1-based ids and 0 for a missing neighbor, a
// pinned-PRNG point generator and a plain SVG plot of a triangulation.

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <locale>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "naw/error.hpp"
#include "naw/geometry.hpp"
#include "naw/hull.hpp"

namespace naw::io {

inline constexpr std::size_t kMaxLineLength = 512;
inline constexpr std::string_view kTrianglesHeader = " 6 point-ids (1,2,3) adjacent triangle-ids ( limbs ab ac bc )";

enum class Precision {
  /// Shortest decimal that reads back to the same value.
  Shortest,
  /// Default iostream formatting (6 significant digits), as the original tool
  /// wrote.
  Compat,
};

namespace detail {

inline std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t s = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > s) out.push_back(line.substr(s, i - s));
  }
  return out;
}

template <class N>
bool parse_number(std::string_view tok, N& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  const char* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

template <std::floating_point T>
void put_number(std::string& out, T v, Precision precision) {
  if (precision == Precision::Compat) {
    std::ostringstream s;
    s.imbue(std::locale::classic());
    s << v;
    out += s.str();
    return;
  }
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.append(buf.data(), ptr);
}

inline void put_int(std::string& out, long long v) {
  std::array<char, 24> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.append(buf.data(), ptr);
}

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open " + path.string());
  return in;
}

}  // namespace detail

/// Writes `content` to a sibling temporary file and renames it over `path`,
/// so readers never observe a partial file.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoWrite, "cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(ErrorCode::IoWrite, "write to " + tmp.string() + " failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw Error(ErrorCode::IoWrite, "cannot replace " + path.string() + ": " + ec.message());
  }
}

// ---------------------------------------------------------------------------
// points

/// Parses a points file. A first line containing the token "points" is a
/// header and its count is ignored. Each data line contributes one point from
/// its leading numbers: three give (x, y, z), exactly two give
/// (x, y, x^2 + y^2). Lines longer than 512 characters or with fewer than two
/// leading numbers are skipped with a warning; blank lines silently.
template <std::floating_point T = double>
std::vector<Point3<T>> parse_points(std::istream& in, std::ostream* warnings = &std::cerr) {
  std::vector<Point3<T>> pts;
  std::string line;
  std::size_t lineno = 0;
  auto warn = [&](std::string_view what) {
    if (warnings) *warnings << "warning: line " << lineno << ": " << what << '\n';
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.size() > kMaxLineLength) {
      warn("longer than 512 characters, skipped");
      continue;
    }
    const auto toks = detail::tokens(line);
    if (lineno == 1 && std::find(toks.begin(), toks.end(), "points") != toks.end()) continue;
    if (toks.empty()) continue;

    std::array<T, 3> v{};
    std::size_t got = 0;
    while (got < 3 && got < toks.size() && detail::parse_number(toks[got], v[got])) ++got;
    if (got < 2) {
      warn("no coordinates, skipped");
      continue;
    }
    if (got == 2) v[2] = v[0] * v[0] + v[1] * v[1];
    pts.push_back({static_cast<index_t>(pts.size()), v[0], v[1], v[2]});
  }
  return pts;
}

template <std::floating_point T = double>
std::vector<Point3<T>> read_points(const std::filesystem::path& path, std::ostream* warnings = &std::cerr) {
  std::ifstream in = detail::open_input(path);
  std::vector<Point3<T>> pts = parse_points<T>(in, warnings);
  if (pts.empty()) throw Error(ErrorCode::EmptyInput, path.string() + " contains no points");
  return pts;
}

template <std::floating_point T>
std::string format_points(std::span<const Point3<T>> pts, Precision precision = Precision::Shortest) {
  std::string out;
  out.reserve(pts.size() * 40 + 16);
  detail::put_int(out, static_cast<long long>(pts.size()));
  out += " 3 points\n";
  for (const Point3<T>& p : pts) {
    detail::put_number(out, p.x, precision);
    out += ' ';
    detail::put_number(out, p.y, precision);
    out += ' ';
    detail::put_number(out, p.z, precision);
    out += '\n';
  }
  return out;
}

template <std::floating_point T>
void write_points(std::span<const Point3<T>> pts, const std::filesystem::path& path,
                  Precision precision = Precision::Shortest) {
  write_file_atomic(path, format_points(pts, precision));
}

template <std::floating_point T>
void write_points(const std::vector<Point3<T>>& pts, const std::filesystem::path& path,
                  Precision precision = Precision::Shortest) {
  write_points(std::span<const Point3<T>>(pts), path, precision);
}

// ---------------------------------------------------------------------------
// triangles

template <std::floating_point T>
std::string format_triangles(std::span<const Facet<T>> facets) {
  std::string out;
  out.reserve(facets.size() * 48 + 80);
  detail::put_int(out, static_cast<long long>(facets.size()));
  out += kTrianglesHeader;
  out += '\n';
  for (const Facet<T>& f : facets) {
    for (index_t v : {f.a, f.b, f.c, f.nab, f.nac, f.nbc}) {
      detail::put_int(out, static_cast<long long>(v) + 1);
      out += ' ';
    }
    out.back() = '\n';
  }
  return out;
}

template <std::floating_point T>
void write_triangles(std::span<const Facet<T>> facets, const std::filesystem::path& path) {
  write_file_atomic(path, format_triangles(facets));
}

template <std::floating_point T>
void write_triangles(const Triangulation<T>& tri, const std::filesystem::path& path) {
  write_triangles(std::span<const Facet<T>>(tri.facets), path);
}

/// Parses a triangles file back into facets (normals left zero). Every data
/// row must hold exactly six non-negative integers.
inline std::vector<Facet<double>> parse_triangles(std::istream& in) {
  std::vector<Facet<double>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto toks = detail::tokens(line);
    if (toks.empty()) continue;
    if (lineno == 1 && std::find(toks.begin(), toks.end(), "point-ids") != toks.end()) continue;
    std::array<long long, 6> v{};
    bool ok = toks.size() == 6;
    for (std::size_t i = 0; ok && i < 6; ++i)
      ok = detail::parse_number(toks[i], v[i]) && v[i] >= 0 && v[i] <= std::numeric_limits<index_t>::max();
    if (!ok || v[0] == 0 || v[1] == 0 || v[2] == 0)
      throw Error(ErrorCode::Parse, "triangles line " + std::to_string(lineno) + ": expected 6 ids, vertices >= 1");
    Facet<double> f;
    f.id = static_cast<index_t>(out.size());
    f.a = static_cast<index_t>(v[0] - 1);
    f.b = static_cast<index_t>(v[1] - 1);
    f.c = static_cast<index_t>(v[2] - 1);
    f.nab = static_cast<index_t>(v[3] - 1);
    f.nac = static_cast<index_t>(v[4] - 1);
    f.nbc = static_cast<index_t>(v[5] - 1);
    out.push_back(f);
  }
  return out;
}

inline std::vector<Facet<double>> read_triangles(const std::filesystem::path& path) {
  std::ifstream in = detail::open_input(path);
  return parse_triangles(in);
}

// ---------------------------------------------------------------------------
// generation

/// xoshiro256** seeded through splitmix64.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed) noexcept {
    for (auto& w : s_) {
      seed += 0x9e3779b97f4a7c15ull;
      std::uint64_t z = seed;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
      w = z ^ (z >> 31);
    }
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::array<std::uint64_t, 4> s_{};
};

enum class GenMode { Square2d, Box3d, Parabola };

inline constexpr double kDefaultRange = 500.0;

inline std::string_view to_string(GenMode m) noexcept {
  switch (m) {
    case GenMode::Square2d: return "square2d";
    case GenMode::Box3d: return "box3d";
    case GenMode::Parabola: return "parabola";
  }
  return "unknown";
}

inline std::optional<GenMode> parse_mode(std::string_view s) noexcept {
  if (s == "square2d") return GenMode::Square2d;
  if (s == "box3d") return GenMode::Box3d;
  if (s == "parabola") return GenMode::Parabola;
  return std::nullopt;
}

/// n points with coordinates uniform in [-range/2, range/2). square2d sets
/// z = 0, parabola z = x^2 + y^2, box3d draws z like x and y.
inline std::vector<Point3<double>> generate_points(std::size_t n, std::uint64_t seed, GenMode mode,
                                                   double range = kDefaultRange) {
  Xoshiro256 rng(seed);
  const double half = range / 2;
  auto coord = [&] {
    const double v = rng.uniform() * range - half;
    return v < half ? v : std::nextafter(half, -half);
  };
  std::vector<Point3<double>> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Point3<double> p{static_cast<index_t>(i), 0, 0, 0};
    p.x = coord();
    p.y = coord();
    switch (mode) {
      case GenMode::Square2d: break;
      case GenMode::Parabola: p.z = p.x * p.x + p.y * p.y; break;
      case GenMode::Box3d: p.z = coord(); break;
    }
    pts.push_back(p);
  }
  return pts;
}

// ---------------------------------------------------------------------------
// SVG

/// One <polyline> per distinct triangle edge, y axis pointing up, viewBox
/// fitted to the point bounding box plus a 2% margin.
template <std::floating_point T>
std::string format_svg(std::span<const Facet<T>> facets, std::span<const Point2<T>> points) {
  std::vector<std::pair<index_t, index_t>> edges;
  edges.reserve(facets.size() * 3);
  for (const Facet<T>& f : facets)
    for (Edge e : kEdges) {
      auto [u, v] = f.edge_vertices(e);
      edges.emplace_back(std::min(u, v), std::max(u, v));
    }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  double x0 = 0, y0 = 0, x1 = 1, y1 = 1;
  if (!points.empty()) {
    x0 = x1 = points[0].x;
    y0 = y1 = points[0].y;
    for (const Point2<T>& p : points) {
      x0 = std::min<double>(x0, p.x);
      x1 = std::max<double>(x1, p.x);
      y0 = std::min<double>(y0, p.y);
      y1 = std::max<double>(y1, p.y);
    }
  }
  double margin = 0.02 * std::max(x1 - x0, y1 - y0);
  if (margin == 0) margin = 1;
  const double left = x0 - margin, top = -(y1 + margin);
  const double width = x1 - x0 + 2 * margin, height = y1 - y0 + 2 * margin;

  std::string out;
  auto num = [&](double v) { detail::put_number(out, v == 0 ? 0.0 : v, Precision::Shortest); };
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"";
  num(left);
  out += ' ';
  num(top);
  out += ' ';
  num(width);
  out += ' ';
  num(height);
  out += "\">\n<g fill=\"none\" stroke=\"black\" stroke-width=\"";
  num(width / 1000);
  out += "\">\n";
  for (const auto& [u, v] : edges) {
    out += "<polyline points=\"";
    num(points[u].x);
    out += ',';
    num(-double(points[u].y));
    out += ' ';
    num(points[v].x);
    out += ',';
    num(-double(points[v].y));
    out += "\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

template <std::floating_point T>
void write_svg(std::span<const Facet<T>> facets, std::span<const Point2<T>> points,
               const std::filesystem::path& path) {
  write_file_atomic(path, format_svg(facets, points));
}

}  // namespace naw::io
