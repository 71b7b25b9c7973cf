#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

#include "naw/naw.hpp"

namespace naw::test {

inline std::vector<Point3<double>> integer_points(std::size_t n, std::uint64_t seed, int lo, int hi) {
  io::Xoshiro256 rng(seed);
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  std::vector<Point3<double>> pts;
  for (std::size_t i = 0; i < n; ++i) {
    Point3<double> p{static_cast<index_t>(i)};
    p.x = lo + static_cast<double>(rng() % span);
    p.y = lo + static_cast<double>(rng() % span);
    p.z = lo + static_cast<double>(rng() % span);
    pts.push_back(p);
  }
  return pts;
}

inline std::vector<Point3<double>> ball_points(std::size_t n, std::uint64_t seed) {
  io::Xoshiro256 rng(seed);
  std::vector<Point3<double>> pts;
  while (pts.size() < n) {
    const double x = 2 * rng.uniform() - 1, y = 2 * rng.uniform() - 1, z = 2 * rng.uniform() - 1;
    if (x * x + y * y + z * z <= 1) pts.push_back({static_cast<index_t>(pts.size()), x, y, z});
  }
  return pts;
}

inline std::vector<Point3<double>> sphere_points(std::size_t n, std::uint64_t seed) {
  auto pts = ball_points(n, seed);
  for (auto& p : pts) {
    const double r = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
    p.x /= r;
    p.y /= r;
    p.z /= r;
  }
  return pts;
}

inline std::vector<Point2<double>> square_points(std::size_t n, std::uint64_t seed, double range = 500) {
  std::vector<Point2<double>> out;
  for (const auto& p : io::generate_points(n, seed, io::GenMode::Square2d, range)) out.push_back({p.id, p.x, p.y});
  return out;
}

inline std::vector<Point3<double>> cube_corners() {
  std::vector<Point3<double>> pts;
  for (int i = 0; i < 8; ++i) pts.push_back({i, double(i & 1), double((i >> 1) & 1), double((i >> 2) & 1)});
  return pts;
}

inline std::vector<Point3<double>> grid_points(int k) {
  std::vector<Point3<double>> pts;
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y)
      for (int z = 0; z < k; ++z) pts.push_back({static_cast<index_t>(pts.size()), double(x), double(y), double(z)});
  return pts;
}

template <std::floating_point T>
std::vector<index_t> vertex_ids(const std::vector<Facet<T>>& facets) {
  std::vector<index_t> v;
  for (const auto& f : facets) v.insert(v.end(), {f.a, f.b, f.c});
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

/// Undirected edges as coordinate pairs, so sets compare across renumbering.
template <std::floating_point T>
std::vector<std::array<double, 4>> coordinate_edges(const Triangulation<T>& tri) {
  std::vector<std::array<double, 4>> out;
  for (const auto& f : tri.facets)
    for (Edge e : kEdges) {
      auto [u, v] = f.edge_vertices(e);
      std::array<double, 4> k{tri.points[u].x, tri.points[u].y, tri.points[v].x, tri.points[v].y};
      if (std::pair(k[2], k[3]) < std::pair(k[0], k[1])) k = {k[2], k[3], k[0], k[1]};
      out.push_back(k);
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("naw_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace naw::test
