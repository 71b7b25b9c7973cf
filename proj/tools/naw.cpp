// naw: command-line front end for the sweep-hull library.
//
// Exit codes: 0 success, 1 domain error or audit violation, 2 usage or parse
// error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "naw/naw.hpp"

namespace {

using naw::Error;
using naw::ErrorCode;

constexpr int kOk = 0;
constexpr int kDomain = 1;
constexpr int kUsage = 2;

struct Input {
  std::string path;
  std::size_t gen = 0;
  std::uint64_t seed = 1;
  std::string mode;
  double range = naw::io::kDefaultRange;
};

struct BuildArgs {
  Input in;
  std::string out;
  std::string svg;
  std::string points_out;
  bool compat_precision = false;
  bool strict_compat = false;
};

void add_input_options(CLI::App& cmd, Input& in, const char* default_mode) {
  in.mode = default_mode;
  cmd.add_option("-i,--input", in.path, "points file");
  cmd.add_option("--gen", in.gen, "generate N points instead of reading a file");
  cmd.add_option("--seed", in.seed, "generator seed");
  cmd.add_option("--mode", in.mode, "generator mode")->check(CLI::IsMember({"square2d", "box3d", "parabola"}));
  cmd.add_option("--range", in.range, "generator coordinate range, centered at 0")->check(CLI::PositiveNumber);
}

naw::io::GenMode mode_of(const std::string& s) { return *naw::io::parse_mode(s); }

std::vector<naw::Point3<double>> load(const Input& in) {
  if (in.gen > 0) return naw::io::generate_points(in.gen, in.seed, mode_of(in.mode), in.range);
  if (in.path.empty()) throw CLI::ValidationError("input", "one of --input or --gen is required");
  return naw::io::read_points<double>(in.path);
}

template <std::floating_point T>
std::vector<naw::Point3<T>> narrow(const std::vector<naw::Point3<double>>& pts) {
  std::vector<naw::Point3<T>> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back({p.id, static_cast<T>(p.x), static_cast<T>(p.y), static_cast<T>(p.z)});
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <std::floating_point T>
int run_build(const BuildArgs& args, bool delaunay) {
  const auto t_read = std::chrono::steady_clock::now();
  const std::vector<naw::Point3<T>> pts = narrow<T>(load(args.in));
  std::cerr << "points: " << pts.size() << " (" << seconds_since(t_read) << " s to load)\n";

  naw::HullOptions options;
  options.strict_compat = args.strict_compat;
  const auto t0 = std::chrono::steady_clock::now();
  naw::Triangulation<T> tri;
  if (delaunay) {
    std::vector<naw::Point2<T>> flat;
    flat.reserve(pts.size());
    for (const auto& p : pts) flat.push_back({p.id, p.x, p.y});
    tri = naw::delaunay_triangulate(flat, options);
  } else {
    tri = naw::build_hull(pts, options);
  }
  const double elapsed = seconds_since(t0);

  std::cerr << "duplicates filtered: " << pts.size() - tri.points.size() << '\n';
  std::cerr << tri.facets.size() << " triangles, " << elapsed << " seconds for triangulation\n";

  const auto precision = args.compat_precision ? naw::io::Precision::Compat : naw::io::Precision::Shortest;
  naw::io::write_triangles(tri, args.out);
  if (!args.points_out.empty()) naw::io::write_points(tri.points, args.points_out, precision);
  if (!args.svg.empty()) {
    const auto flat = naw::project(std::span<const naw::Point3<T>>(tri.points));
    naw::io::write_svg(std::span<const naw::Facet<T>>(tri.facets), std::span<const naw::Point2<T>>(flat), args.svg);
  }
  return kOk;
}

int cmd_build(const BuildArgs& args, bool delaunay) {
  return args.strict_compat ? run_build<float>(args, delaunay) : run_build<double>(args, delaunay);
}

struct VerifyArgs {
  std::string points;
  std::string triangles;
  std::string mode = "delaunay";
};

void print_report(const naw::verify::AuditReport& r, std::string_view mode, std::size_t facets, std::size_t points) {
  std::cout << "audit: " << mode << '\n'
            << "facets: " << facets << "  points: " << points << '\n'
            << "epsilon: " << r.epsilon << "  worst_excess: " << r.worst_excess << '\n'
            << "euler: " << (r.euler_ok ? "ok" : "FAIL") << "  adjacency: " << (r.adjacency_ok ? "ok" : "FAIL") << '\n'
            << "pairs checked: " << r.pairs_checked << (r.sampled ? " (sampled)" : "") << '\n'
            << "violations: " << r.violation_count << '\n';
  for (const auto& v : r.violations) {
    std::cout << "  " << naw::verify::to_string(v.kind);
    for (auto id : v.ids) std::cout << ' ' << id;
    if (v.magnitude != 0) std::cout << "  excess " << v.magnitude;
    std::cout << '\n';
  }
  std::cout << "result: " << (r.clean() ? "clean" : "VIOLATIONS") << '\n';
}

int cmd_verify(const VerifyArgs& args) {
  std::vector<naw::Point3<double>> raw;
  std::vector<naw::Facet<double>> facets;
  try {
    raw = naw::io::read_points<double>(args.points);
    facets = naw::io::read_triangles(args.triangles);
  } catch (const Error& e) {
    std::cerr << "naw: " << e.what() << '\n';
    return kUsage;
  }

  naw::verify::AuditOptions opt;
  opt.eps_scale = naw::harness::epsilon_scale_from_env(opt.eps_scale);

  // Triangle ids index the de-duplicated, sweep-sorted point array.
  std::vector<naw::Point3<double>> sorted;
  if (args.mode == "delaunay") {
    std::vector<naw::Point2<double>> flat;
    for (const auto& p : raw) flat.push_back({p.id, p.x, p.y});
    sorted = naw::dedup(naw::lift(flat)).unique;
  } else {
    sorted = naw::dedup(raw).unique;
  }
  const auto nv = static_cast<naw::index_t>(sorted.size());
  const auto nf = static_cast<naw::index_t>(facets.size());
  for (const auto& f : facets) {
    const bool bad_vertex = f.a >= nv || f.b >= nv || f.c >= nv;
    const bool bad_neighbor = f.nab >= nf || f.nbc >= nf || f.nac >= nf;
    if (bad_vertex || bad_neighbor) {
      std::cerr << "naw: PARSE: triangle " << f.id + 1 << " refers to an id out of range\n";
      return kUsage;
    }
  }

  naw::verify::AuditReport report;
  if (args.mode == "delaunay") {
    std::vector<naw::Point2<double>> flat;
    for (const auto& p : sorted) flat.push_back({p.id, p.x, p.y});
    report = naw::verify::audit_delaunay(std::span<const naw::Facet<double>>(facets),
                                         std::span<const naw::Point2<double>>(flat), opt);
  } else {
    report = naw::verify::audit_hull(std::span<const naw::Facet<double>>(facets),
                                     std::span<const naw::Point3<double>>(sorted), opt);
  }
  print_report(report, args.mode, facets.size(), sorted.size());
  return report.clean() ? kOk : kDomain;
}

struct GridArgs {
  std::vector<std::size_t> sizes;
  std::vector<std::uint64_t> seeds{1};
  std::string mode = "square2d";
  std::size_t repeats = 3;
  std::size_t parallel = 1;
  bool per_insertion = false;
  double range = naw::io::kDefaultRange;
  std::string compare;
};

struct Cell {
  std::size_t n;
  std::uint64_t seed;
};

std::vector<Cell> cells_of(const GridArgs& g) {
  std::vector<Cell> cells;
  for (auto n : g.sizes)
    for (auto s : g.seeds) cells.push_back({n, s});
  return cells;
}

int cmd_stats(const GridArgs& g) {
  for (auto n : g.sizes)
    if (n < 10) throw CLI::ValidationError("--sizes", "every size must be at least 10");
  const auto cells = cells_of(g);
  const auto records = naw::harness::run_cells<naw::harness::BenchRecord>(cells.size(), g.parallel, [&](std::size_t i) {
    return naw::harness::stats_cell(cells[i].n, cells[i].seed, g.per_insertion, g.range);
  });
  if (g.per_insertion) {
    std::cout << naw::harness::kInsertionCsvHeader << '\n';
    for (const auto& r : records) std::cout << naw::harness::format_insertion_rows(r);
  } else {
    std::cout << naw::harness::kCsvHeader << '\n';
    for (const auto& r : records) std::cout << naw::harness::format_csv_row(r) << '\n';
  }
  return kOk;
}

int cmd_bench(const GridArgs& g) {
  const auto cells = cells_of(g);
  const auto mode = mode_of(g.mode);
  const auto records = naw::harness::run_cells<naw::harness::BenchRecord>(cells.size(), g.parallel, [&](std::size_t i) {
    return naw::harness::bench_cell(cells[i].n, cells[i].seed, mode, g.repeats, g.range);
  });
  if (!g.compare.empty()) {
    std::ifstream in(g.compare);
    if (!in) throw Error(ErrorCode::FileNotFound, "cannot open " + g.compare);
    const auto theirs = naw::harness::parse_external_timings(in);
    std::cout << naw::harness::comparison_table(records, theirs);
    return kOk;
  }
  std::cout << naw::harness::kCsvHeader << '\n';
  for (const auto& r : records) std::cout << naw::harness::format_csv_row(r) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sweep-hull convex hulls and Delaunay triangulations"};
  app.require_subcommand(1);

  BuildArgs del_args, hull_args;
  for (auto [name, args, desc, mode] :
       {std::tuple{"delaunay", &del_args, "2D Delaunay triangulation", "square2d"},
        std::tuple{"hull3d", &hull_args, "3D convex hull", "box3d"}}) {
    CLI::App* cmd = app.add_subcommand(name, desc);
    add_input_options(*cmd, args->in, mode);
    cmd->add_option("-o,--output", args->out, "triangles file")->required();
    cmd->add_option("--points-out", args->points_out, "write the de-duplicated sorted points the ids refer to");
    cmd->add_flag("--compat-precision", args->compat_precision, "6 significant digits in written points");
    cmd->add_flag("--strict-compat", args->strict_compat, "32-bit coordinates and the strict seed rule");
    if (args == &del_args) cmd->add_option("--svg", args->svg, "SVG plot of the triangulation");
  }

  Input gen_in;
  std::string gen_out;
  bool gen_compat = false;
  CLI::App* gen = app.add_subcommand("gen", "generate a points file");
  add_input_options(*gen, gen_in, "square2d");
  gen->add_option("-o,--output", gen_out, "points file")->required();
  gen->add_flag("--compat-precision", gen_compat, "6 significant digits");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "audit a triangles file against its points");
  verify->add_option("points", verify_args.points, "points file")->required();
  verify->add_option("triangles", verify_args.triangles, "triangles file")->required();
  verify->add_option("--mode", verify_args.mode, "audit kind")->check(CLI::IsMember({"hull", "delaunay"}));

  GridArgs stats_args, bench_args;
  CLI::App* stats = app.add_subcommand("stats", "visible-facet statistics as CSV");
  CLI::App* bench = app.add_subcommand("bench", "median triangulation wall time as CSV");
  for (auto [cmd, g] : {std::pair{stats, &stats_args}, std::pair{bench, &bench_args}}) {
    cmd->add_option("--sizes", g->sizes, "point counts")->required()->delimiter(',');
    cmd->add_option("--seeds", g->seeds, "generator seeds")->delimiter(',');
    cmd->add_option("--range", g->range, "coordinate range")->check(CLI::PositiveNumber);
    cmd->add_option("--parallel", g->parallel, "worker threads for independent cells")->check(CLI::PositiveNumber);
  }
  stats->add_flag("--per-insertion", stats_args.per_insertion, "emit every insertion instead of per-run summaries");
  bench->add_option("--repeats", bench_args.repeats, "repeats per cell; the median is reported")->check(CLI::PositiveNumber);
  bench->add_option("--mode", bench_args.mode, "generator mode")->check(CLI::IsMember({"square2d", "box3d", "parabola"}));
  bench->add_option("--compare", bench_args.compare, "CSV of other tools' timings (tool,n,seconds)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (app.got_subcommand("delaunay")) return cmd_build(del_args, true);
    if (app.got_subcommand("hull3d")) return cmd_build(hull_args, false);
    if (app.got_subcommand("gen")) {
      if (gen_in.gen == 0) throw CLI::ValidationError("--gen", "point count required");
      const auto pts = naw::io::generate_points(gen_in.gen, gen_in.seed, mode_of(gen_in.mode), gen_in.range);
      naw::io::write_points(pts, gen_out, gen_compat ? naw::io::Precision::Compat : naw::io::Precision::Shortest);
      return kOk;
    }
    if (app.got_subcommand("verify")) return cmd_verify(verify_args);
    if (app.got_subcommand("stats")) return cmd_stats(stats_args);
    if (app.got_subcommand("bench")) return cmd_bench(bench_args);
  } catch (const CLI::Error& e) {
    std::cerr << "naw: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "naw: " << e.what() << '\n';
    return e.code() == ErrorCode::Parse ? kUsage : kDomain;
  }
  return kUsage;
}
