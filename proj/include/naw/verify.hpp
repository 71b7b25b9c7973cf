#pragma once

// Independent oracles and structural auditors.
//
// Nothing here reuses the sweep-hull code path. Orientation and in-circle
// signs are evaluated in double precision behind a magnitude-scaled error
// band; inside the band they are recomputed exactly with rational arithmetic.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "naw/error.hpp"
#include "naw/geometry.hpp"
#include "naw/hull.hpp"

namespace naw::verify {

namespace exact {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

/// Exact rational value of a finite double.
inline cpp_rational rational(double v) {
  if (v == 0.0) return cpp_rational(0);
  int exp = 0;
  const double mant = std::frexp(v, &exp);
  cpp_int num = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  if (exp >= 0) return cpp_rational(num << exp);
  return cpp_rational(num, cpp_int(1) << -exp);
}

inline int sign(const cpp_rational& v) { return v.sign(); }

}  // namespace exact

// Relative error-band factors for the double filters. They sit well above
// the proven forward-error bounds for these expressions.
inline constexpr double kOrient2Band = 1e-14;
inline constexpr double kOrient3Band = 1e-14;
inline constexpr double kInCircleBand = 1e-13;

/// Sign of (b - a) x (c - a) in the plane.
inline int orient2d(double ax, double ay, double bx, double by, double cx, double cy) {
  const double l = (bx - ax) * (cy - ay);
  const double r = (by - ay) * (cx - ax);
  const double det = l - r;
  const double band = kOrient2Band * (std::abs(l) + std::abs(r));
  if (det > band) return 1;
  if (det < -band) return -1;
  using exact::rational;
  const auto e = (rational(bx) - rational(ax)) * (rational(cy) - rational(ay)) -
                 (rational(by) - rational(ay)) * (rational(cx) - rational(ax));
  return exact::sign(e);
}

template <std::floating_point T>
int orient2d(const Point2<T>& a, const Point2<T>& b, const Point2<T>& c) {
  return orient2d(a.x, a.y, b.x, b.y, c.x, c.y);
}

/// Sign of ((b - a) x (c - a)) . (d - a): positive when d lies on the side
/// the triangle normal points to.
inline int orient3d(const Vec3<double>& a, const Vec3<double>& b, const Vec3<double>& c, const Vec3<double>& d) {
  const Vec3<double> u = b - a;
  const Vec3<double> v = c - a;
  const Vec3<double> w = d - a;
  const double det = dot(cross(u, v), w);
  const double perm = std::abs(w.x) * (std::abs(u.y * v.z) + std::abs(u.z * v.y)) +
                      std::abs(w.y) * (std::abs(u.z * v.x) + std::abs(u.x * v.z)) +
                      std::abs(w.z) * (std::abs(u.x * v.y) + std::abs(u.y * v.x));
  const double band = kOrient3Band * perm;
  if (det > band) return 1;
  if (det < -band) return -1;
  using exact::cpp_rational;
  using exact::rational;
  const cpp_rational ux = rational(b.x) - rational(a.x), uy = rational(b.y) - rational(a.y),
                     uz = rational(b.z) - rational(a.z);
  const cpp_rational vx = rational(c.x) - rational(a.x), vy = rational(c.y) - rational(a.y),
                     vz = rational(c.z) - rational(a.z);
  const cpp_rational wx = rational(d.x) - rational(a.x), wy = rational(d.y) - rational(a.y),
                     wz = rational(d.z) - rational(a.z);
  const cpp_rational e = (uy * vz - uz * vy) * wx + (uz * vx - ux * vz) * wy + (ux * vy - uy * vx) * wz;
  return exact::sign(e);
}

template <std::floating_point T>
Vec3<double> as_double(const Point3<T>& p) {
  return {static_cast<double>(p.x), static_cast<double>(p.y), static_cast<double>(p.z)};
}

template <std::floating_point T>
int orient3d(const Point3<T>& a, const Point3<T>& b, const Point3<T>& c, const Point3<T>& d) {
  return orient3d(as_double(a), as_double(b), as_double(c), as_double(d));
}

/// Exact collinearity: all three axis projections are degenerate.
template <std::floating_point T>
bool collinear_exact(const Point3<T>& a, const Point3<T>& b, const Point3<T>& c) {
  return orient2d(a.x, a.y, b.x, b.y, c.x, c.y) == 0 && orient2d(a.y, a.z, b.y, b.z, c.y, c.z) == 0 &&
         orient2d(a.z, a.x, b.z, b.x, c.z, c.x) == 0;
}

/// In-circle determinant, normalized so that a positive value means p lies
/// strictly inside the circumcircle of (a, b, c) whatever their winding.
/// Values inside the rounding band are recomputed exactly (zero stays zero).
template <std::floating_point T>
double in_circumcircle(const Point2<T>& a, const Point2<T>& b, const Point2<T>& c, const Point2<T>& p) {
  const int winding = orient2d(a, b, c);
  if (winding == 0) throw Error(ErrorCode::CollinearTriangle, "circumcircle of a collinear triple", {a.id, b.id, c.id});

  const double adx = double(a.x) - double(p.x), ady = double(a.y) - double(p.y);
  const double bdx = double(b.x) - double(p.x), bdy = double(b.y) - double(p.y);
  const double cdx = double(c.x) - double(p.x), cdy = double(c.y) - double(p.y);
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;
  const double det = alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) + clift * (adx * bdy - bdx * ady);
  const double perm = alift * (std::abs(bdx * cdy) + std::abs(cdx * bdy)) +
                      blift * (std::abs(cdx * ady) + std::abs(adx * cdy)) +
                      clift * (std::abs(adx * bdy) + std::abs(bdx * ady));
  if (std::abs(det) > kInCircleBand * perm) return winding * det;

  using exact::cpp_rational;
  using exact::rational;
  const cpp_rational ax = rational(a.x) - rational(p.x), ay = rational(a.y) - rational(p.y);
  const cpp_rational bx = rational(b.x) - rational(p.x), by = rational(b.y) - rational(p.y);
  const cpp_rational cx = rational(c.x) - rational(p.x), cy = rational(c.y) - rational(p.y);
  const cpp_rational e = (ax * ax + ay * ay) * (bx * cy - cx * by) + (bx * bx + by * by) * (cx * ay - ax * cy) +
                         (cx * cx + cy * cy) * (ax * by - bx * ay);
  return winding * static_cast<double>(e);
}

// ---------------------------------------------------------------------------
// 2D hull oracle

/// Strict convex hull vertices (no collinear points), counter-clockwise.
template <std::floating_point T>
std::vector<index_t> convex_hull_2d(std::span<const Point2<T>> pts) {
  std::vector<index_t> idx(pts.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<index_t>(i);
  std::sort(idx.begin(), idx.end(), [&](index_t l, index_t r) {
    return pts[l].x != pts[r].x ? pts[l].x < pts[r].x : pts[l].y < pts[r].y;
  });
  if (idx.size() < 3) return idx;

  std::vector<index_t> h(2 * idx.size());
  std::size_t k = 0;
  auto turn = [&](index_t o, index_t a, index_t b) { return orient2d(pts[o], pts[a], pts[b]); };
  for (index_t i : idx) {
    while (k >= 2 && turn(h[k - 2], h[k - 1], i) <= 0) --k;
    h[k++] = i;
  }
  for (std::size_t j = idx.size() - 1, t = k + 1; j-- > 0;) {
    const index_t i = idx[j];
    while (k >= t && turn(h[k - 2], h[k - 1], i) <= 0) --k;
    h[k++] = i;
  }
  h.resize(k - 1);
  return h;
}

/// Every point lying on the convex hull boundary, including points in the
/// interior of hull edges. All points when the set is collinear.
template <std::floating_point T>
std::vector<index_t> hull_boundary_points(std::span<const Point2<T>> pts) {
  const std::vector<index_t> hull = convex_hull_2d(pts);
  std::vector<char> on(pts.size(), 0);
  for (index_t v : hull) on[v] = 1;
  if (hull.size() < 3) {
    std::vector<index_t> all(pts.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<index_t>(i);
    return all;
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (on[i]) continue;
    for (std::size_t e = 0; e < hull.size(); ++e) {
      const Point2<T>& a = pts[hull[e]];
      const Point2<T>& b = pts[hull[(e + 1) % hull.size()]];
      const Point2<T>& q = pts[i];
      if (orient2d(a, b, q) != 0) continue;
      if (q.x >= std::min(a.x, b.x) && q.x <= std::max(a.x, b.x) && q.y >= std::min(a.y, b.y) &&
          q.y <= std::max(a.y, b.y)) {
        on[i] = 1;
        break;
      }
    }
  }
  std::vector<index_t> out;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (on[i]) out.push_back(static_cast<index_t>(i));
  return out;
}

// ---------------------------------------------------------------------------
// 3D brute-force hull oracle

struct OracleFace {
  /// Every input point on the supporting plane, sorted. Identifies the face.
  std::vector<index_t> on_plane;
  /// Extreme vertices of the face in cyclic order, outward winding, starting
  /// at the sweep-order smallest vertex.
  std::vector<index_t> polygon;
};

struct OracleHull {
  std::vector<OracleFace> faces;
  /// Fan triangulation of every face, outward winding.
  std::vector<std::array<index_t, 3>> facets;
  /// Extreme points of the hull, sorted.
  std::vector<index_t> vertices;
  bool planar = false;
};

inline constexpr std::size_t kBruteHullCap = 60;

namespace detail {

template <std::floating_point T>
std::vector<index_t> face_polygon(std::span<const Point3<T>> pts, const std::vector<index_t>& on_plane,
                                  const Vec3<double>& normal) {
  // Project by dropping the dominant normal axis; exact for any input.
  const double ax = std::abs(normal.x), ay = std::abs(normal.y), az = std::abs(normal.z);
  const int drop = (ax >= ay && ax >= az) ? 0 : (ay >= az ? 1 : 2);
  std::vector<Point2<double>> flat;
  flat.reserve(on_plane.size());
  for (index_t i : on_plane) {
    const Vec3<double> p = as_double(pts[i]);
    if (drop == 0) flat.push_back({i, p.y, p.z});
    else if (drop == 1) flat.push_back({i, p.z, p.x});
    else flat.push_back({i, p.x, p.y});
  }
  std::vector<index_t> ring;
  for (index_t k : convex_hull_2d(std::span<const Point2<double>>(flat))) ring.push_back(on_plane[k]);
  return ring;
}

}  // namespace detail

/// O(n^4) hull: a triple spans a face iff every other point lies weakly on one
/// side of its plane. Coplanar faces are fan-triangulated from their
/// sweep-order smallest vertex. Input must be free of duplicates.
template <std::floating_point T>
OracleHull brute_hull(std::span<const Point3<T>> pts, std::size_t cap = kBruteHullCap) {
  if (pts.size() > cap)
    throw Error(ErrorCode::CapExceeded, std::to_string(pts.size()) + " points exceed oracle cap " + std::to_string(cap));
  const std::size_t n = pts.size();
  OracleHull out;
  std::map<std::vector<index_t>, std::size_t> seen;

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        if (collinear_exact(pts[i], pts[j], pts[k])) continue;
        int pos = 0, neg = 0;
        index_t witness = kNone;
        std::vector<index_t> on_plane;
        for (std::size_t m = 0; m < n; ++m) {
          const int s = orient3d(pts[i], pts[j], pts[k], pts[m]);
          if (s == 0) on_plane.push_back(static_cast<index_t>(m));
          else {
            (s > 0 ? pos : neg)++;
            witness = static_cast<index_t>(m);
          }
          if (pos && neg) break;
        }
        if (pos && neg) continue;
        if (seen.contains(on_plane)) continue;
        seen.emplace(on_plane, out.faces.size());

        const Vec3<double> a = as_double(pts[i]);
        const Vec3<double> normal = cross(as_double(pts[j]) - a, as_double(pts[k]) - a);
        OracleFace face;
        face.on_plane = on_plane;
        face.polygon = detail::face_polygon(pts, on_plane, normal);
        if (witness == kNone) {
          out.planar = true;
        } else if (orient3d(pts[face.polygon[0]], pts[face.polygon[1]], pts[face.polygon[2]], pts[witness]) > 0) {
          std::reverse(face.polygon.begin(), face.polygon.end());
        }
        const auto smallest = std::min_element(face.polygon.begin(), face.polygon.end(), [&](index_t l, index_t r) {
          return compare_points(pts[l], pts[r]) < 0;
        });
        std::rotate(face.polygon.begin(), smallest, face.polygon.end());
        out.faces.push_back(std::move(face));
      }

  std::vector<index_t> verts;
  for (const OracleFace& f : out.faces) {
    for (std::size_t t = 1; t + 1 < f.polygon.size(); ++t)
      out.facets.push_back({f.polygon[0], f.polygon[t], f.polygon[t + 1]});
    verts.insert(verts.end(), f.polygon.begin(), f.polygon.end());
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  out.vertices = std::move(verts);
  return out;
}

template <std::floating_point T>
OracleHull brute_hull(const std::vector<Point3<T>>& pts, std::size_t cap = kBruteHullCap) {
  return brute_hull(std::span<const Point3<T>>(pts), cap);
}

struct OracleMatch {
  /// Sweep-hull vertex set equals the oracle's extreme points exactly.
  bool vertex_sets_equal = false;
  /// Every extreme point is a sweep-hull vertex and every sweep-hull vertex
  /// lies on the hull boundary. Differs from vertex_sets_equal only when
  /// points sit inside coplanar faces or on hull edges.
  bool extreme_vertices_match = false;
  /// Every facet's plane supports exactly the point set of some oracle face,
  /// and every oracle face is covered.
  bool supports_match = false;
  std::vector<std::string> problems;
};

/// Compares a sweep hull against the brute-force oracle. `tri.points` must be
/// the array the oracle was computed over.
template <std::floating_point T>
OracleMatch compare_with_oracle(const Triangulation<T>& tri, const OracleHull& oracle) {
  const std::span<const Point3<T>> pts(tri.points);
  OracleMatch m;

  std::vector<index_t> verts;
  for (const Facet<T>& f : tri.facets) verts.insert(verts.end(), {f.a, f.b, f.c});
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());

  std::vector<index_t> boundary;
  for (const OracleFace& f : oracle.faces) boundary.insert(boundary.end(), f.on_plane.begin(), f.on_plane.end());
  std::sort(boundary.begin(), boundary.end());
  boundary.erase(std::unique(boundary.begin(), boundary.end()), boundary.end());

  m.vertex_sets_equal = verts == oracle.vertices;
  m.extreme_vertices_match = std::includes(verts.begin(), verts.end(), oracle.vertices.begin(), oracle.vertices.end()) &&
                             std::includes(boundary.begin(), boundary.end(), verts.begin(), verts.end());
  if (!m.vertex_sets_equal)
    m.problems.push_back("vertex sets differ: " + std::to_string(verts.size()) + " vs " +
                         std::to_string(oracle.vertices.size()) + " extreme");

  std::map<std::vector<index_t>, bool> covered;
  for (const OracleFace& f : oracle.faces) covered.emplace(f.on_plane, false);

  bool supports = true;
  for (const Facet<T>& f : tri.facets) {
    std::vector<index_t> on_plane;
    int pos = 0, neg = 0;
    for (std::size_t q = 0; q < pts.size(); ++q) {
      const int s = orient3d(pts[f.a], pts[f.b], pts[f.c], pts[q]);
      if (s == 0) on_plane.push_back(static_cast<index_t>(q));
      else (s > 0 ? pos : neg)++;
    }
    if (pos && neg) {
      supports = false;
      m.problems.push_back("facet " + std::to_string(f.id) + " plane separates the input");
      continue;
    }
    auto it = covered.find(on_plane);
    if (it == covered.end()) {
      supports = false;
      m.problems.push_back("facet " + std::to_string(f.id) + " plane matches no oracle face");
      continue;
    }
    it->second = true;
  }
  for (const auto& [key, hit] : covered)
    if (!hit) {
      supports = false;
      m.problems.push_back("oracle face with " + std::to_string(key.size()) + " points not covered");
    }
  m.supports_match = supports;
  return m;
}

// ---------------------------------------------------------------------------
// audits

enum class ViolationKind {
  VertexRange,
  Adjacency,
  DegenerateFacet,
  Winding,
  Containment,
  Circumcircle,
  Euler,
  TriangleCount,
  BoundaryCount,
};

constexpr std::string_view to_string(ViolationKind k) noexcept {
  switch (k) {
    case ViolationKind::VertexRange: return "vertex-range";
    case ViolationKind::Adjacency: return "adjacency";
    case ViolationKind::DegenerateFacet: return "degenerate-facet";
    case ViolationKind::Winding: return "winding";
    case ViolationKind::Containment: return "containment";
    case ViolationKind::Circumcircle: return "circumcircle";
    case ViolationKind::Euler: return "euler";
    case ViolationKind::TriangleCount: return "triangle-count";
    case ViolationKind::BoundaryCount: return "boundary-count";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  std::vector<index_t> ids;
  double magnitude = 0;
};

/// Audit outcome. Containment and circumcircle excesses feed `worst_excess`;
/// counting identities feed `euler_ok`; range, adjacency, area and winding
/// faults feed `adjacency_ok`. `violations` is empty exactly when
/// worst_excess <= epsilon and both flags hold.
struct AuditReport {
  std::vector<Violation> violations;
  std::size_t violation_count = 0;
  double worst_excess = 0;
  double epsilon = 0;
  bool euler_ok = true;
  bool adjacency_ok = true;
  std::size_t pairs_checked = 0;
  bool sampled = false;

  bool clean() const noexcept { return violation_count == 0; }

  void add(ViolationKind kind, std::vector<index_t> ids, double magnitude = 0) {
    ++violation_count;
    switch (kind) {
      case ViolationKind::Euler:
      case ViolationKind::TriangleCount:
      case ViolationKind::BoundaryCount: euler_ok = false; break;
      case ViolationKind::Containment:
      case ViolationKind::Circumcircle: break;
      default: adjacency_ok = false; break;
    }
    if (violations.size() < kMaxListed) violations.push_back({kind, std::move(ids), magnitude});
  }

  static constexpr std::size_t kMaxListed = 1000;
};

struct AuditOptions {
  /// Containment slack is eps_scale * scale^2, circumcircle slack
  /// eps_scale * scale^4, scale being the largest coordinate magnitude.
  double eps_scale = 1e-9;
  /// Exhaustive (facet, point) checking up to this many pairs for hulls...
  std::size_t hull_pair_cap = 50'000'000;
  /// ...and up to this many points for Delaunay triangulations.
  std::size_t delaunay_point_cap = 2000;
  /// Random pairs checked beyond the caps.
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 0x9e3779b97f4a7c15ull;
};

namespace detail {

template <class F>
void check_adjacency(std::span<const F> facets, std::size_t num_points, bool allow_boundary, AuditReport& r) {
  const auto nf = static_cast<index_t>(facets.size());
  for (const F& f : facets) {
    for (index_t v : {f.a, f.b, f.c})
      if (v < 0 || static_cast<std::size_t>(v) >= num_points) r.add(ViolationKind::VertexRange, {f.id, v});
    if (f.a == f.b || f.b == f.c || f.a == f.c) r.add(ViolationKind::DegenerateFacet, {f.id});
  }
  if (!r.adjacency_ok) return;

  for (index_t i = 0; i < nf; ++i) {
    const F& f = facets[i];
    if (f.id != i) r.add(ViolationKind::Adjacency, {i, f.id});
    for (Edge e : kEdges) {
      const index_t nb = f.neighbor(e);
      const auto [u, v] = f.edge_vertices(e);
      if (nb == kNone) {
        if (!allow_boundary) r.add(ViolationKind::Adjacency, {i, u, v});
        continue;
      }
      if (nb < 0 || nb >= nf || nb == i) {
        r.add(ViolationKind::Adjacency, {i, nb});
        continue;
      }
      const F& g = facets[nb];
      int naming = 0;
      for (Edge ge : kEdges)
        if (g.neighbor(ge) == i) ++naming;
      const auto slot = g.edge_of(u, v);
      if (!slot || g.neighbor(*slot) != i || naming != 1) r.add(ViolationKind::Adjacency, {i, nb, u, v});
    }
  }

  // each undirected edge: two facets, or one facet with a boundary slot
  std::vector<std::array<index_t, 3>> edges;
  edges.reserve(facets.size() * 3);
  for (const F& f : facets)
    for (Edge e : kEdges) {
      auto [u, v] = f.edge_vertices(e);
      if (u > v) std::swap(u, v);
      edges.push_back({u, v, f.id});
    }
  std::sort(edges.begin(), edges.end());
  for (std::size_t s = 0; s < edges.size();) {
    std::size_t e = s + 1;
    while (e < edges.size() && edges[e][0] == edges[s][0] && edges[e][1] == edges[s][1]) ++e;
    const std::size_t count = e - s;
    if (count > 2 || (count == 1 && !allow_boundary)) r.add(ViolationKind::Adjacency, {edges[s][0], edges[s][1]});
    if (count == 1 && allow_boundary) {
      const F& f = facets[edges[s][2]];
      const auto slot = f.edge_of(edges[s][0], edges[s][1]);
      if (f.neighbor(*slot) != kNone) r.add(ViolationKind::Adjacency, {f.id, edges[s][0], edges[s][1]});
    }
    s = e;
  }
}

inline double max_abs(double acc, double v) { return std::max(acc, std::abs(v)); }

}  // namespace detail

/// Structural audit of a closed hull: containment of every point, mutual
/// edge-consistent adjacency, and F = 2V - 4. Facet orientation is rebuilt
/// from vertex coordinates (outward = away from the vertex centroid), so the
/// audit also works on triangle files that carry no normals.
template <std::floating_point T>
AuditReport audit_hull(std::span<const Facet<T>> facets, std::span<const Point3<T>> points,
                       const AuditOptions& opt = {}) {
  AuditReport r;
  double scale = 0;
  for (const Point3<T>& p : points) scale = detail::max_abs(detail::max_abs(detail::max_abs(scale, p.x), p.y), p.z);
  r.epsilon = opt.eps_scale * scale * scale;

  detail::check_adjacency(facets, points.size(), false, r);
  if (!r.adjacency_ok) return r;

  std::vector<index_t> verts;
  for (const Facet<T>& f : facets) verts.insert(verts.end(), {f.a, f.b, f.c});
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  const auto V = static_cast<long long>(verts.size());
  const auto F = static_cast<long long>(facets.size());
  if (F != 2 * V - 4) r.add(ViolationKind::Euler, {static_cast<index_t>(F), static_cast<index_t>(V)});

  Vec3<double> centroid{};
  for (index_t v : verts) centroid = centroid + as_double(points[v]);
  if (!verts.empty()) centroid = (1.0 / static_cast<double>(verts.size())) * centroid;

  struct Plane {
    Vec3<double> anchor, normal;
  };
  std::vector<Plane> planes;
  planes.reserve(facets.size());
  for (const Facet<T>& f : facets) {
    const Vec3<double> a = as_double(points[f.a]);
    Vec3<double> n = cross(as_double(points[f.b]) - a, as_double(points[f.c]) - a);
    if (is_zero(n)) {
      r.add(ViolationKind::DegenerateFacet, {f.id});
      continue;
    }
    if (dot(n, centroid - a) > 0) n = -n;
    planes.push_back({a, n});
  }

  auto check = [&](std::size_t fi, std::size_t pi) {
    const double d = dot(as_double(points[pi]) - planes[fi].anchor, planes[fi].normal);
    r.worst_excess = std::max(r.worst_excess, d);
    if (d > r.epsilon) r.add(ViolationKind::Containment, {static_cast<index_t>(fi), static_cast<index_t>(pi)}, d);
  };

  const std::size_t pairs = planes.size() * points.size();
  if (pairs <= opt.hull_pair_cap) {
    for (std::size_t fi = 0; fi < planes.size(); ++fi)
      for (std::size_t pi = 0; pi < points.size(); ++pi) check(fi, pi);
    r.pairs_checked = pairs;
  } else if (!planes.empty() && !points.empty()) {
    std::mt19937_64 rng(opt.seed);
    for (std::size_t s = 0; s < opt.samples; ++s) check(rng() % planes.size(), rng() % points.size());
    r.pairs_checked = opt.samples;
    r.sampled = true;
  }
  return r;
}

template <std::floating_point T>
AuditReport audit_hull(const Triangulation<T>& tri, const AuditOptions& opt = {}) {
  return audit_hull(std::span<const Facet<T>>(tri.facets), std::span<const Point3<T>>(tri.points), opt);
}

/// Audit of a planar Delaunay triangulation: adjacency with -1 boundary
/// slots, non-degenerate counter-clockwise triangles, the empty-circumcircle
/// property, F = 2u - 2 - h and boundary edge count = h (h counting every
/// point on the 2D hull boundary).
template <std::floating_point T>
AuditReport audit_delaunay(std::span<const Facet<T>> facets, std::span<const Point2<T>> points,
                           const AuditOptions& opt = {}) {
  AuditReport r;
  double scale = 0;
  for (const Point2<T>& p : points) scale = detail::max_abs(detail::max_abs(scale, p.x), p.y);
  r.epsilon = opt.eps_scale * scale * scale * scale * scale;

  detail::check_adjacency(facets, points.size(), true, r);
  if (r.violation_count && std::any_of(r.violations.begin(), r.violations.end(),
                                       [](const Violation& v) { return v.kind == ViolationKind::VertexRange; }))
    return r;

  std::vector<char> usable(facets.size(), 1);
  for (const Facet<T>& f : facets) {
    const int s = orient2d(points[f.a], points[f.b], points[f.c]);
    if (s == 0) {
      r.add(ViolationKind::DegenerateFacet, {f.id});
      usable[f.id] = 0;
    } else if (s < 0) {
      r.add(ViolationKind::Winding, {f.id});
    }
  }

  auto check = [&](std::size_t fi, std::size_t pi) {
    const Facet<T>& f = facets[fi];
    const auto p = static_cast<index_t>(pi);
    if (!usable[fi] || f.has_vertex(p)) return;
    const double v = in_circumcircle(points[f.a], points[f.b], points[f.c], points[pi]);
    r.worst_excess = std::max(r.worst_excess, v);
    if (v > r.epsilon) r.add(ViolationKind::Circumcircle, {f.id, p}, v);
  };

  if (points.size() <= opt.delaunay_point_cap) {
    for (std::size_t fi = 0; fi < facets.size(); ++fi)
      for (std::size_t pi = 0; pi < points.size(); ++pi) check(fi, pi);
    r.pairs_checked = facets.size() * points.size();
  } else if (!facets.empty()) {
    std::mt19937_64 rng(opt.seed);
    for (std::size_t s = 0; s < opt.samples; ++s) check(rng() % facets.size(), rng() % points.size());
    r.pairs_checked = opt.samples;
    r.sampled = true;
  }

  const auto h = static_cast<long long>(hull_boundary_points(points).size());
  const auto u = static_cast<long long>(points.size());
  const auto F = static_cast<long long>(facets.size());
  if (F != 2 * u - 2 - h) r.add(ViolationKind::TriangleCount, {static_cast<index_t>(F), static_cast<index_t>(2 * u - 2 - h)});

  long long boundary_edges = 0;
  for (const Facet<T>& f : facets)
    for (Edge e : kEdges) boundary_edges += f.neighbor(e) == kNone;
  if (boundary_edges != h)
    r.add(ViolationKind::BoundaryCount, {static_cast<index_t>(boundary_edges), static_cast<index_t>(h)});
  return r;
}

template <std::floating_point T>
AuditReport audit_delaunay(const Triangulation<T>& tri, const AuditOptions& opt = {}) {
  std::vector<Point2<T>> flat;
  flat.reserve(tri.points.size());
  for (const Point3<T>& p : tri.points) flat.push_back({p.id, p.x, p.y});
  return audit_delaunay(std::span<const Facet<T>>(tri.facets), std::span<const Point2<T>>(flat), opt);
}

}  // namespace naw::verify
