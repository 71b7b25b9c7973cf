#pragma once

// Statistics and benchmark cells behind the `stats` and `bench` commands.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "naw/delaunay.hpp"
#include "naw/error.hpp"
#include "naw/hull.hpp"
#include "naw/io.hpp"

namespace naw::harness {

inline constexpr std::string_view kCsvHeader = "n,seed,mode,wall_s,facets,mean_visible,max_visible,scan_mean";
inline constexpr std::string_view kInsertionCsvHeader = "n,seed,insertion,point,visible,scan_length";

struct BenchRecord {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  io::GenMode mode = io::GenMode::Parabola;
  double wall_s = 0;
  std::size_t facets = 0;
  double mean_visible = 0;
  index_t max_visible = 0;
  double scan_mean = 0;
  /// Filled only when the per-insertion series was requested.
  std::vector<InsertionStats> insertions;
};

inline std::string format_csv_row(const BenchRecord& r) {
  std::string out;
  io::detail::put_int(out, static_cast<long long>(r.n));
  out += ',';
  out += std::to_string(r.seed);
  out += ',';
  out += io::to_string(r.mode);
  out += ',';
  io::detail::put_number(out, r.wall_s, io::Precision::Shortest);
  out += ',';
  io::detail::put_int(out, static_cast<long long>(r.facets));
  out += ',';
  io::detail::put_number(out, r.mean_visible, io::Precision::Shortest);
  out += ',';
  io::detail::put_int(out, r.max_visible);
  out += ',';
  io::detail::put_number(out, r.scan_mean, io::Precision::Shortest);
  return out;
}

inline std::string format_insertion_rows(const BenchRecord& r) {
  std::string out;
  for (std::size_t i = 0; i < r.insertions.size(); ++i) {
    const InsertionStats& s = r.insertions[i];
    out += std::to_string(r.n) + ',' + std::to_string(r.seed) + ',' + std::to_string(i) + ',' +
           std::to_string(s.point) + ',' + std::to_string(s.visible) + ',' + std::to_string(s.scan_length) + '\n';
  }
  return out;
}

/// Mean and max visible-facet counts over the insertions that struck facets
/// (coplanar-phase insertions strike none and are left out).
inline void summarize(std::span<const InsertionStats> stats, BenchRecord& r) {
  double visible = 0, scan = 0;
  std::size_t counted = 0;
  for (const InsertionStats& s : stats) {
    if (s.coplanar) continue;
    visible += s.visible;
    scan += s.scan_length;
    r.max_visible = std::max(r.max_visible, s.visible);
    ++counted;
  }
  if (counted) {
    r.mean_visible = visible / static_cast<double>(counted);
    r.scan_mean = scan / static_cast<double>(counted);
  }
}

inline std::vector<Point2<double>> flatten(const std::vector<Point3<double>>& pts) {
  std::vector<Point2<double>> out;
  out.reserve(pts.size());
  for (const Point3<double>& p : pts) out.push_back({p.id, p.x, p.y});
  return out;
}

/// Triangulation facet count for generated input: a Delaunay build for the
/// planar modes, a full hull for box3d. Returns elapsed seconds of the build
/// call alone.
inline double timed_build(const std::vector<Point3<double>>& pts, io::GenMode mode, std::size_t& facets,
                          std::vector<InsertionStats>* stats) {
  using clock = std::chrono::steady_clock;
  if (mode == io::GenMode::Box3d) {
    const auto t0 = clock::now();
    const Triangulation<double> tri = build_hull(pts, {}, stats);
    const auto t1 = clock::now();
    facets = tri.facets.size();
    return std::chrono::duration<double>(t1 - t0).count();
  }
  const std::vector<Point2<double>> flat = flatten(pts);
  const auto t0 = clock::now();
  const Triangulation<double> tri = delaunay_triangulate(flat, {}, stats);
  const auto t1 = clock::now();
  facets = tri.facets.size();
  return std::chrono::duration<double>(t1 - t0).count();
}

/// One statistics cell: parabola-mode points triangulated with per-insertion
/// capture.
inline BenchRecord stats_cell(std::size_t n, std::uint64_t seed, bool keep_insertions,
                              double range = io::kDefaultRange) {
  BenchRecord r;
  r.n = n;
  r.seed = seed;
  r.mode = io::GenMode::Parabola;
  const auto pts = io::generate_points(n, seed, r.mode, range);
  std::vector<InsertionStats> stats;
  r.wall_s = timed_build(pts, r.mode, r.facets, &stats);
  summarize(stats, r);
  if (keep_insertions) r.insertions = std::move(stats);
  return r;
}

/// One benchmark cell: median wall time of `repeats` builds of the same set.
inline BenchRecord bench_cell(std::size_t n, std::uint64_t seed, io::GenMode mode, std::size_t repeats,
                              double range = io::kDefaultRange) {
  BenchRecord r;
  r.n = n;
  r.seed = seed;
  r.mode = mode;
  const auto pts = io::generate_points(n, seed, mode, range);
  std::vector<double> times;
  for (std::size_t k = 0; k < std::max<std::size_t>(repeats, 1); ++k) {
    std::vector<InsertionStats> stats;
    times.push_back(timed_build(pts, mode, r.facets, k == 0 ? &stats : nullptr));
    if (k == 0) summarize(stats, r);
  }
  std::sort(times.begin(), times.end());
  const std::size_t m = times.size();
  r.wall_s = m % 2 ? times[m / 2] : 0.5 * (times[m / 2 - 1] + times[m / 2]);
  return r;
}

/// Runs `task(i)` for i in [0, count) on up to `workers` threads. Results keep
/// index order; the first exception is rethrown after all workers finish.
template <class Result, class Task>
std::vector<Result> run_cells(std::size_t count, std::size_t workers, Task task) {
  std::vector<std::optional<Result>> slots(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      if (failed.load()) return;
      try {
        slots[i].emplace(task(i));
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<Result> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

// ---------------------------------------------------------------------------
// timings of other tools, supplied by the user

struct ExternalTiming {
  std::string tool;
  std::size_t n = 0;
  double seconds = 0;
  /// The value is an upper bound ("<0.002"), not a measurement.
  bool upper_bound = false;
};

/// Reads "tool,n,seconds" rows. A leading '<' on seconds marks an upper
/// bound. A first row whose n column is not a number is taken as a header.
inline std::vector<ExternalTiming> parse_external_timings(std::istream& in) {
  std::vector<ExternalTiming> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string_view> cols;
    std::string_view rest = line;
    for (std::size_t comma; (comma = rest.find(',')) != std::string_view::npos;) {
      cols.push_back(rest.substr(0, comma));
      rest.remove_prefix(comma + 1);
    }
    cols.push_back(rest);
    auto fail = [&] { throw Error(ErrorCode::Parse, "timings line " + std::to_string(lineno) + ": expected tool,n,seconds"); };
    if (cols.size() != 3) fail();
    ExternalTiming t;
    t.tool = std::string(cols[0]);
    if (!io::detail::parse_number(cols[1], t.n)) {
      if (lineno == 1) continue;
      fail();
    }
    std::string_view secs = cols[2];
    if (!secs.empty() && secs.front() == '<') {
      t.upper_bound = true;
      secs.remove_prefix(1);
    }
    if (!io::detail::parse_number(secs, t.seconds)) fail();
    out.push_back(std::move(t));
  }
  return out;
}

/// Side-by-side table: one row per size, one column per tool, this
/// implementation first. Upper bounds print as "≤x".
inline std::string comparison_table(std::span<const BenchRecord> ours, std::span<const ExternalTiming> theirs) {
  std::vector<std::string> tools;
  for (const ExternalTiming& t : theirs)
    if (std::find(tools.begin(), tools.end(), t.tool) == tools.end()) tools.push_back(t.tool);
  std::vector<std::size_t> sizes;
  for (const BenchRecord& r : ours) sizes.push_back(r.n);
  for (const ExternalTiming& t : theirs) sizes.push_back(t.n);
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

  auto secs = [](double v) {
    std::string s;
    io::detail::put_number(s, v, io::Precision::Shortest);
    return s + "s";
  };
  std::string out = "| n | naw |";
  for (const std::string& t : tools) out += " " + t + " |";
  out += "\n|---|---|";
  for (std::size_t i = 0; i < tools.size(); ++i) out += "---|";
  out += '\n';
  for (std::size_t n : sizes) {
    out += "| " + std::to_string(n) + " | ";
    auto mine = std::find_if(ours.begin(), ours.end(), [&](const BenchRecord& r) { return r.n == n; });
    out += mine == ours.end() ? "-" : secs(mine->wall_s);
    out += " |";
    for (const std::string& tool : tools) {
      auto it = std::find_if(theirs.begin(), theirs.end(),
                             [&](const ExternalTiming& t) { return t.tool == tool && t.n == n; });
      out += ' ';
      if (it == theirs.end()) out += '-';
      else out += (it->upper_bound ? "≤" : "") + secs(it->seconds);
      out += " |";
    }
    out += '\n';
  }
  return out;
}

/// Containment tolerance scale: NAW_EPSILON when set, else `fallback`.
inline double epsilon_scale_from_env(double fallback = 1e-9) {
  const char* raw = std::getenv("NAW_EPSILON");
  if (!raw || !*raw) return fallback;
  double v = 0;
  if (!io::detail::parse_number(std::string_view(raw), v) || !(v >= 0) || !std::isfinite(v))
    throw Error(ErrorCode::Parse, std::string("NAW_EPSILON is not a non-negative number: ") + raw);
  return v;
}

}  // namespace naw::harness
