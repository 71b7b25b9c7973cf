// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "support.hpp"

namespace naw {
namespace {

using clock_type = std::chrono::steady_clock;
const std::filesystem::path kGolden = NAW_GOLDEN_DIR;

struct Verdict {
  bool pass = true;
  std::string detail;
};

double since(clock_type::time_point t0) { return std::chrono::duration<double>(clock_type::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Verdict oracle_equivalence() {
  const auto t0 = clock_type::now();
  int agree = 0, planar = 0;
  std::string first_failure;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    io::Xoshiro256 rng(seed * 7919);
    const std::size_t n = 4 + rng() % 47;
    const auto pts = test::integer_points(n, seed, -100, 100);
    const auto unique = dedup(pts).unique;
    const auto oracle = verify::brute_hull(unique);
    bool ok = false;
    try {
      const auto tri = build_hull(pts);
      const auto m = verify::compare_with_oracle(tri, oracle);
      ok = !oracle.planar && m.vertex_sets_equal && m.supports_match;
    } catch (const Error& e) {
      ok = oracle.planar && e.code() == ErrorCode::DegenerateCoplanarSet;
      planar += ok;
    }
    agree += ok;
    if (!ok && first_failure.empty()) first_failure = fmt(" first failure seed %llu n %zu", (unsigned long long)seed, n);
  }
  const double t = since(t0);
  return {agree == 200 && t < 60,
          fmt("%d/200 seeds agree (%d planar), %.1f s", agree, planar, t) + first_failure};
}

Verdict delaunay_correctness() {
  int clean = 0, counts = 0;
  std::size_t violations = 0;
  double worst_ratio = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto pts = test::square_points(2000, seed, 500);
    const auto tri = delaunay_triangulate(pts);
    const auto r = verify::audit_delaunay(tri);
    std::size_t cc = 0;
    for (const auto& v : r.violations) cc += v.kind == verify::ViolationKind::Circumcircle;
    violations += cc;
    clean += cc == 0 && r.worst_excess <= r.epsilon;
    worst_ratio = std::max(worst_ratio, r.worst_excess / r.epsilon);
    std::vector<Point2<double>> flat;
    for (const auto& p : tri.points) flat.push_back({p.id, p.x, p.y});
    const auto h = verify::convex_hull_2d(std::span<const Point2<double>>(flat)).size();
    counts += tri.facets.size() == 2 * tri.points.size() - 2 - h;
  }
  return {clean == 20 && counts == 20,
          fmt("%d/20 runs without circumcircle violations (%zu total, worst excess %.2g x eps), "
              "%d/20 triangle counts = 2u-2-h",
              clean, violations, worst_ratio, counts)};
}

Verdict structural_invariants() {
  std::vector<std::pair<std::string, std::vector<Point3<double>>>> cases;
  cases.emplace_back("cube", test::cube_corners());
  cases.emplace_back("grid3", test::grid_points(3));
  cases.emplace_back("grid5", test::grid_points(5));
  std::vector<Point3<double>> slab;  // long planar phase before volume
  for (int x = 0; x < 10; ++x)
    for (int y = 0; y < 10; ++y) slab.push_back({-1, double(x), double(y), 0});
  slab.push_back({-1, 4.5, 4.5, 1});
  cases.emplace_back("planar-then-apex", slab);
  for (std::uint64_t s = 1; s <= 5; ++s) cases.emplace_back("ball50", test::ball_points(50, s));
  cases.emplace_back("sphere1000", test::sphere_points(1000, 1));
  cases.emplace_back("box3d-20000", io::generate_points(20000, 1, io::GenMode::Box3d));
  cases.emplace_back("parabola-20000", io::generate_points(20000, 1, io::GenMode::Parabola));
  for (std::uint64_t s = 1; s <= 30; ++s) cases.emplace_back("int-grid", test::integer_points(50, s, -5, 5));

  int ok = 0;
  std::string failures;
  for (const auto& [name, pts] : cases) {
    const auto r = verify::audit_hull(build_hull(pts));
    if (r.clean()) ++ok;
    else failures += " " + name;
  }
  return {ok == static_cast<int>(cases.size()),
          fmt("%d/%zu builds audit clean", ok, cases.size()) + (failures.empty() ? "" : "; failed:" + failures)};
}

Verdict scaling() {
  double t[3];
  const std::size_t sizes[3] = {10'000, 100'000, 1'000'000};
  for (int i = 0; i < 3; ++i) t[i] = harness::bench_cell(sizes[i], 1, io::GenMode::Square2d, 3).wall_s;
  const double r1 = t[1] / t[0], r2 = t[2] / t[1];
  const bool pass = r1 >= 8 && r1 <= 25 && r2 >= 8 && r2 <= 25 && t[2] < 60;
  return {pass, fmt("median t(1e4)=%.4f s t(1e5)=%.3f s t(1e6)=%.2f s, ratios %.1f and %.1f", t[0], t[1], t[2], r1, r2)};
}

Verdict visible_trend() {
  double mean[3];
  const std::size_t sizes[3] = {1'000, 10'000, 100'000};
  for (int i = 0; i < 3; ++i) {
    double sum = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) sum += harness::stats_cell(sizes[i], seed, false).mean_visible;
    mean[i] = sum / 5;
  }
  const double d1 = mean[1] - mean[0], d2 = mean[2] - mean[1];
  const bool pass = d1 > 0 && d2 > 0 && std::max(d1, d2) <= 3 * std::min(d1, d2);
  return {pass, fmt("mean visible %.2f, %.2f, %.2f; increments %.2f and %.2f", mean[0], mean[1], mean[2], d1, d2)};
}

Verdict format_compatibility() {
  std::vector<std::string> bad;
  const auto lifted = io::read_points(kGolden / "lift2.pts");
  if (lifted.size() != 3 || lifted[0].z != 0 || lifted[1].z != 1 || lifted[2].z != 1 || lifted[1].x != 1)
    bad.push_back("2-column lift");
  const auto bare = io::read_points(kGolden / "noheader.pts");
  if (bare.size() != 1 || bare[0].x != 2 || bare[0].y != 3 || bare[0].z != 13) bad.push_back("headerless row");
  const auto three = io::read_points(kGolden / "verbatim3.pts");
  if (three.size() != 1 || three[0].x != 1 || three[0].y != 2 || three[0].z != 7) bad.push_back("3-column row");

  Facet<double> f;
  f.a = 0;
  f.b = 1;
  f.c = 2;
  const std::vector<Facet<double>> one{f};
  if (io::format_triangles(std::span<const Facet<double>>(one)) !=
      "1 6 point-ids (1,2,3) adjacent triangle-ids ( limbs ab ac bc )\n1 2 3 0 0 0\n")
    bad.push_back("single triangle row");
  std::vector<Point2<double>> corners;
  for (const auto& p : io::read_points(kGolden / "square.pts")) corners.push_back({p.id, p.x, p.y});
  const auto square = delaunay_triangulate(corners);
  if (io::format_triangles(std::span<const Facet<double>>(square.facets)) != test::slurp(kGolden / "square.tris"))
    bad.push_back("unit square golden");

  std::string detail = "points goldens parse exactly, triangles header and 1-based/0 columns match";
  if (!bad.empty()) {
    detail = "mismatch:";
    for (const auto& b : bad) detail += " " + b;
  }
  return {bad.empty(), detail};
}

Verdict determinism() {
  auto render = [] {
    std::vector<Point2<double>> flat;
    for (const auto& p : io::generate_points(200, 42, io::GenMode::Square2d)) flat.push_back({p.id, p.x, p.y});
    return io::format_triangles(std::span<const Facet<double>>(delaunay_triangulate(flat).facets));
  };
  const std::string a = render(), b = render();
  auto hull_render = [] {
    return io::format_triangles(std::span<const Facet<double>>(build_hull(test::sphere_points(5000, 3)).facets));
  };
  const bool repeat = a == b && hull_render() == hull_render();
  const bool frozen = a == test::slurp(kGolden / "gen200_seed42.tris");
  return {repeat && frozen, fmt("repeat runs byte-identical: %s; matches frozen golden: %s", repeat ? "yes" : "no",
                                frozen ? "yes" : "no")};
}

}  // namespace
}  // namespace naw

int main() {
  using naw::Verdict;
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"oracle equivalence (hull)", naw::oracle_equivalence},
      {"delaunay correctness", naw::delaunay_correctness},
      {"structural invariants", naw::structural_invariants},
      {"scaling", naw::scaling},
      {"visible-facet statistic", naw::visible_trend},
      {"format compatibility", naw::format_compatibility},
      {"determinism", naw::determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("threw ") + e.what()};
    }
    failed += !v.pass;
    std::cout << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
