#pragma once

// 2D Delaunay triangulation through the paraboloid lift: the downward-facing
// facets of the convex hull of (x, y, x^2 + y^2) project onto the Delaunay
// triangulation of (x, y).

#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "naw/dedup.hpp"
#include "naw/error.hpp"
#include "naw/geometry.hpp"
#include "naw/hull.hpp"

namespace naw {

template <std::floating_point T>
std::vector<Point3<T>> lift(std::span<const Point2<T>> points) {
  std::vector<Point3<T>> out;
  out.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point2<T>& p = points[i];
    const T z = p.x * p.x + p.y * p.y;
    if (!std::isfinite(z))
      throw Error(ErrorCode::Overflow, "x^2 + y^2 is not finite for point " + std::to_string(i),
                  {static_cast<index_t>(i)});
    out.push_back({p.id, p.x, p.y, z});
  }
  return out;
}

template <std::floating_point T>
std::vector<Point3<T>> lift(const std::vector<Point2<T>>& points) {
  return lift(std::span<const Point2<T>>(points));
}

template <std::floating_point T>
std::vector<Point2<T>> project(std::span<const Point3<T>> points) {
  std::vector<Point2<T>> out;
  out.reserve(points.size());
  for (const Point3<T>& p : points) out.push_back({p.id, p.x, p.y});
  return out;
}

namespace detail {

/// Signed doubled area of the xy-projection; positive when counter-clockwise.
template <std::floating_point T>
T orient_xy(const Point3<T>& a, const Point3<T>& b, const Point3<T>& c) noexcept {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

template <std::floating_point T>
void make_ccw(std::vector<Facet<T>>& facets, std::span<const Point3<T>> points) {
  for (Facet<T>& f : facets) {
    if (orient_xy(points[f.a], points[f.b], points[f.c]) < T(0)) {
      std::swap(f.b, f.c);
      std::swap(f.nab, f.nac);
    }
  }
}

}  // namespace detail

/// Delaunay triangulation of a planar point set.
///
/// Output triangles are counter-clockwise; neighbor id -1 marks a boundary
/// edge. Three non-collinear points give a single triangle. Co-circular input
/// (lifted points all coplanar) is triangulated from the lower sheet of the
/// planar hull; collinear input is DEGENERATE_COPLANAR_SET.
template <std::floating_point T>
Triangulation<T> delaunay_triangulate(std::span<const Point2<T>> points, const HullOptions& options = {},
                                      std::vector<InsertionStats>* stats = nullptr) {
  for (std::size_t i = 0; i < points.size(); ++i)
    if (!std::isfinite(points[i].x) || !std::isfinite(points[i].y))
      throw Error(ErrorCode::NonFiniteCoordinate, "point " + std::to_string(i) + " has a non-finite coordinate",
                  {static_cast<index_t>(i)});

  DedupResult<T> d = dedup(lift(points));
  const std::size_t u = d.unique.size();
  if (u < 3) throw Error(ErrorCode::TooFewPoints, "need at least 3 unique points, got " + std::to_string(u));

  Triangulation<T> tri;
  tri.source_ids = std::move(d.source_ids);

  if (u == 3) {
    const auto& p = d.unique;
    if (detail::orient_xy(p[0], p[1], p[2]) == T(0))
      throw Error(ErrorCode::DegenerateCoplanarSet, "three collinear points", {0, 1, 2});
    Facet<T> f;
    f.id = 0;
    f.a = 0;
    f.b = 1;
    f.c = 2;
    f.normal = triangle_normal(p[0], p[1], p[2]);
    if (f.normal.z > T(0)) f.normal = -f.normal;
    tri.facets.push_back(f);
    tri.points = std::move(d.unique);
    detail::make_ccw(tri.facets, std::span<const Point3<T>>(tri.points));
    return tri;
  }

  HullState<T> state = sweep(std::move(d.unique), options, stats);
  if (!state.has_volume) {
    // Planar lift: vertical plane iff the 2D input is collinear.
    if (state.facets[0].normal.z == T(0))
      throw Error(ErrorCode::DegenerateCoplanarSet, "all points are collinear", detail::planar_boundary(state));
  }

  tri.facets = compact(state.facets,
                       [](const Facet<T>& f) { return f.live() && f.normal.z < T(0); }, Dangling::Boundary);
  tri.points = std::move(state.points);
  detail::make_ccw(tri.facets, std::span<const Point3<T>>(tri.points));
  return tri;
}

template <std::floating_point T>
Triangulation<T> delaunay_triangulate(const std::vector<Point2<T>>& points, const HullOptions& options = {},
                                      std::vector<InsertionStats>* stats = nullptr) {
  return delaunay_triangulate(std::span<const Point2<T>>(points), options, stats);
}

}  // namespace naw
