#include <sys/wait.h>

#include <gtest/gtest.h>

#include "support.hpp"

namespace naw {
namespace {

const std::filesystem::path kGolden = NAW_GOLDEN_DIR;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  test::TempDir dir;

  Outcome run(const std::string& args) {
    const auto out = dir / "stdout", err = dir / "stderr";
    const std::string cmd = std::string(NAW_BINARY) + " " + args + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, test::slurp(out), test::slurp(err)};
  }

  std::string path(const std::string& name) { return (dir / name).string(); }

  std::string write(const std::string& name, const std::string& text) {
    io::write_file_atomic(dir / name, text);
    return path(name);
  }

  std::vector<Facet<double>> triangles(const std::string& name) { return io::read_triangles(dir / name); }
};

TEST_F(Cli, DelaunayGeneratedRowCountMatchesEuler) {
  const auto r = run("delaunay --gen 100 --seed 1 -o " + path("t.tris"));
  ASSERT_EQ(r.code, 0) << r.err;
  std::vector<Point2<double>> flat;
  for (const auto& p : io::generate_points(100, 1, io::GenMode::Square2d)) flat.push_back({p.id, p.x, p.y});
  const auto h = verify::convex_hull_2d(std::span<const Point2<double>>(flat)).size();
  EXPECT_EQ(triangles("t.tris").size(), 2 * 100 - 2 - h);
  EXPECT_NE(r.err.find("duplicates filtered: 0"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("seconds for triangulation"), std::string::npos) << r.err;
}

TEST_F(Cli, ThreePointFile) {
  const auto r = run("delaunay -i " + write("p.pts", "0 0\n1 0\n0 1\n") + " -o " + path("t.tris"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(test::slurp(dir / "t.tris"), "1 6 point-ids (1,2,3) adjacent triangle-ids ( limbs ab ac bc )\n1 3 2 0 0 0\n");
}

TEST_F(Cli, IdenticalPointsFail) {
  const auto r = run("delaunay -i " + write("p.pts", "1 1\n1 1\n1 1\n1 1\n") + " -o " + path("t.tris"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("TOO_FEW_POINTS"), std::string::npos) << r.err;
  EXPECT_FALSE(std::filesystem::exists(dir / "t.tris"));
}

TEST_F(Cli, Hull3dTetrahedronAndCube) {
  ASSERT_EQ(run("hull3d -i " + write("tet.pts", "0 0 0\n1 0 0\n0 1 0\n0 0 1\n") + " -o " + path("tet.tris")).code, 0);
  EXPECT_EQ(triangles("tet.tris").size(), 4u);
  std::string cube;
  for (const auto& p : test::cube_corners()) cube += std::to_string(p.x) + " " + std::to_string(p.y) + " " + std::to_string(p.z) + "\n";
  ASSERT_EQ(run("hull3d -i " + write("cube.pts", cube) + " -o " + path("cube.tris")).code, 0);
  EXPECT_EQ(triangles("cube.tris").size(), 12u);
}

TEST_F(Cli, Hull3dSphereVerifies) {
  io::write_points(test::sphere_points(1000, 4), dir / "s.pts");
  ASSERT_EQ(run("hull3d -i " + path("s.pts") + " -o " + path("s.tris")).code, 0);
  const auto r = run("verify --mode hull " + path("s.pts") + " " + path("s.tris"));
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("result: clean"), std::string::npos);
}

TEST_F(Cli, VerifyDelaunayValidPair) {
  ASSERT_EQ(run("gen --gen 500 --seed 3 -o " + path("p.pts")).code, 0);
  ASSERT_EQ(run("delaunay -i " + path("p.pts") + " -o " + path("t.tris")).code, 0);
  const auto r = run("verify " + path("p.pts") + " " + path("t.tris"));
  EXPECT_EQ(r.code, 0) << r.out;
}

TEST_F(Cli, VerifyCorruptedNeighbor) {
  ASSERT_EQ(run("delaunay --gen 200 --seed 3 --points-out " + path("p.pts") + " -o " + path("t.tris")).code, 0);
  auto facets = triangles("t.tris");
  auto& f = *std::find_if(facets.begin(), facets.end(), [](const auto& g) { return g.nab >= 0 && g.nac >= 0; });
  std::swap(f.nab, f.nac);
  io::write_triangles(std::span<const Facet<double>>(facets), dir / "t.tris");
  const auto r = run("verify " + path("p.pts") + " " + path("t.tris"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("adjacency"), std::string::npos) << r.out;
}

TEST_F(Cli, VerifyMismatchedFiles) {
  ASSERT_EQ(run("delaunay --gen 200 --seed 3 --points-out " + path("p.pts") + " -o " + path("t.tris")).code, 0);
  write("small.pts", "0 0\n1 0\n0 1\n1 1\n");
  EXPECT_EQ(run("verify " + path("small.pts") + " " + path("t.tris")).code, 2);
  write("bad.tris", "1 6 point-ids\n1 2 three 0 0 0\n");
  EXPECT_EQ(run("verify " + path("p.pts") + " " + path("bad.tris")).code, 2);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("triangulate").code, 2);
  EXPECT_EQ(run("delaunay --gen 10").code, 2);
  EXPECT_EQ(run("delaunay -o " + path("t.tris")).code, 2);
  EXPECT_EQ(run("gen --gen 5 --mode cube -o " + path("p.pts")).code, 2);
  EXPECT_EQ(run("stats --sizes 5").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(Cli, MissingInputFileIsDomainError) {
  const auto r = run("delaunay -i " + path("none.pts") + " -o " + path("t.tris"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("FILE_NOT_FOUND"), std::string::npos);
}

TEST_F(Cli, SvgAndCompatPrecision) {
  const auto r = run("delaunay --gen 50 --seed 2 --compat-precision --points-out " + path("p.pts") + " --svg " +
                     path("t.svg") + " -o " + path("t.tris"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto svg = test::slurp(dir / "t.svg");
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  const auto pts = test::slurp(dir / "p.pts");
  std::istringstream in(pts);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, "50 3 points");
  EXPECT_LE(row.find(' '), 8u) << row;  // at most six significant digits
}

TEST_F(Cli, StrictCompat) {
  const auto r = run("delaunay --gen 300 --seed 5 --strict-compat -o " + path("t.tris"));
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST_F(Cli, GenModes) {
  ASSERT_EQ(run("gen --gen 20 --seed 9 --mode parabola --range 10 -o " + path("p.pts")).code, 0);
  for (const auto& p : io::read_points(dir / "p.pts")) {
    EXPECT_EQ(p.z, p.x * p.x + p.y * p.y);
    EXPECT_LT(std::abs(p.x), 5.0 + 1e-12);
  }
}

TEST_F(Cli, StatsCsv) {
  const auto r = run("stats --sizes 1000,2000 --seeds 1,2");
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "n,seed,mode,wall_s,facets,mean_visible,max_visible,scan_mean");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 7);
    EXPECT_NE(line.find("parabola"), std::string::npos);
  }
  EXPECT_EQ(rows, 4);
}

TEST_F(Cli, StatsPerInsertion) {
  const auto r = run("stats --sizes 100 --per-insertion --parallel 2 --seeds 1,2");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("n,seed,insertion,point,visible,scan_length\n", 0), 0u);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1 + 2 * 97);
}

TEST_F(Cli, BenchAndComparison) {
  auto r = run("bench --sizes 1000,2000 --repeats 3");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 3);
  r = run("bench --sizes 1000 --repeats 1 --compare " + write("cmp.csv", "tool,n,seconds\nsweepline,1000,<0.002\n"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("≤0.002s"), std::string::npos) << r.out;
}

TEST_F(Cli, DeterministicAndFrozen) {
  ASSERT_EQ(run("delaunay --gen 200 --seed 42 -o " + path("a.tris")).code, 0);
  ASSERT_EQ(run("delaunay --gen 200 --seed 42 -o " + path("b.tris")).code, 0);
  const auto a = test::slurp(dir / "a.tris");
  EXPECT_EQ(a, test::slurp(dir / "b.tris"));
  EXPECT_EQ(a, test::slurp(kGolden / "gen200_seed42.tris"));
}

}  // namespace
}  // namespace naw
