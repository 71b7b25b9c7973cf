#pragma once

// Core value types and geometric predicates shared by the hull builder, the
// Delaunay front end and the verification oracles.
//
// Every type is templated on the coordinate scalar. `double` is the default;
// `float` reproduces the 32-bit arithmetic of the original sweep-hull code.

#include <algorithm>
#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>

namespace naw {

using index_t = std::int32_t;
inline constexpr index_t kNone = -1;

template <std::floating_point T>
struct Vec3 {
  T x{};
  T y{};
  T z{};

  friend constexpr Vec3 operator+(const Vec3& u, const Vec3& v) noexcept {
    return {u.x + v.x, u.y + v.y, u.z + v.z};
  }
  friend constexpr Vec3 operator-(const Vec3& u, const Vec3& v) noexcept {
    return {u.x - v.x, u.y - v.y, u.z - v.z};
  }
  friend constexpr Vec3 operator-(const Vec3& u) noexcept { return {-u.x, -u.y, -u.z}; }
  friend constexpr Vec3 operator*(T s, const Vec3& u) noexcept { return {s * u.x, s * u.y, s * u.z}; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

template <std::floating_point T>
constexpr T dot(const Vec3<T>& u, const Vec3<T>& v) noexcept {
  return u.x * v.x + u.y * v.y + u.z * v.z;
}

template <std::floating_point T>
constexpr Vec3<T> cross(const Vec3<T>& u, const Vec3<T>& v) noexcept {
  return {u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
}

template <std::floating_point T>
constexpr bool is_zero(const Vec3<T>& u) noexcept {
  return u.x == T(0) && u.y == T(0) && u.z == T(0);
}

/// An input point. `id` is the original input index (or, after
/// de-duplication, the dense index in sorted order); -1 means unassigned.
template <std::floating_point T = double>
struct Point3 {
  index_t id = kNone;
  T x{};
  T y{};
  T z{};

  constexpr Vec3<T> pos() const noexcept { return {x, y, z}; }
  constexpr bool finite() const noexcept {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
  friend constexpr Vec3<T> operator-(const Point3& p, const Point3& q) noexcept {
    return p.pos() - q.pos();
  }
};

template <std::floating_point T = double>
struct Point2 {
  index_t id = kNone;
  T x{};
  T y{};
};

/// Sweep order: ascending z, then x, then y.
template <std::floating_point T>
constexpr std::weak_ordering compare_points(const Point3<T>& p, const Point3<T>& q) noexcept {
  if (p.z != q.z) return p.z < q.z ? std::weak_ordering::less : std::weak_ordering::greater;
  if (p.x != q.x) return p.x < q.x ? std::weak_ordering::less : std::weak_ordering::greater;
  if (p.y != q.y) return p.y < q.y ? std::weak_ordering::less : std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

struct SweepLess {
  template <std::floating_point T>
  constexpr bool operator()(const Point3<T>& p, const Point3<T>& q) const noexcept {
    return compare_points(p, q) < 0;
  }
};

template <std::floating_point T>
constexpr bool same_coordinates(const Point3<T>& p, const Point3<T>& q) noexcept {
  return p.x == q.x && p.y == q.y && p.z == q.z;
}

/// (B - A) x (C - A); the zero vector exactly when the three points are
/// collinear (in the arithmetic of T).
template <std::floating_point T>
constexpr Vec3<T> triangle_normal(const Point3<T>& a, const Point3<T>& b, const Point3<T>& c) noexcept {
  return cross(b - a, c - a);
}

enum class FacetState : std::uint8_t { Dead, Live, Fresh };

/// Edge of a facet, named by the two vertex slots it joins.
enum class Edge : std::uint8_t { AB, BC, AC };

template <std::floating_point T = double>
struct Facet {
  index_t id = kNone;
  index_t a = kNone;
  index_t b = kNone;
  index_t c = kNone;
  index_t nab = kNone;
  index_t nbc = kNone;
  index_t nac = kNone;
  Vec3<T> normal{};
  FacetState state = FacetState::Live;

  constexpr bool live() const noexcept { return state != FacetState::Dead; }

  constexpr bool has_vertex(index_t v) const noexcept { return a == v || b == v || c == v; }

  constexpr index_t neighbor(Edge e) const noexcept {
    switch (e) {
      case Edge::AB: return nab;
      case Edge::BC: return nbc;
      case Edge::AC: return nac;
    }
    return kNone;
  }

  constexpr void set_neighbor(Edge e, index_t f) noexcept {
    switch (e) {
      case Edge::AB: nab = f; break;
      case Edge::BC: nbc = f; break;
      case Edge::AC: nac = f; break;
    }
  }

  constexpr std::pair<index_t, index_t> edge_vertices(Edge e) const noexcept {
    switch (e) {
      case Edge::AB: return {a, b};
      case Edge::BC: return {b, c};
      case Edge::AC: return {a, c};
    }
    return {kNone, kNone};
  }

  /// Vertex opposite to edge `e`.
  constexpr index_t apex(Edge e) const noexcept {
    switch (e) {
      case Edge::AB: return c;
      case Edge::BC: return a;
      case Edge::AC: return b;
    }
    return kNone;
  }

  /// The edge joining u and v (either order), if this facet has one.
  constexpr std::optional<Edge> edge_of(index_t u, index_t v) const noexcept {
    auto match = [&](index_t p, index_t q) { return (p == u && q == v) || (p == v && q == u); };
    if (match(a, b)) return Edge::AB;
    if (match(a, c)) return Edge::AC;
    if (match(b, c)) return Edge::BC;
    return std::nullopt;
  }

  constexpr bool same_vertex_set(const Facet& o) const noexcept {
    return o.has_vertex(a) && o.has_vertex(b) && o.has_vertex(c);
  }
};

inline constexpr Edge kEdges[3] = {Edge::AB, Edge::BC, Edge::AC};

/// Stitching record for a freshly spawned facet: `vertex` is the non-apex
/// endpoint of the unassigned edge, `slot` the neighbor slot it fills.
struct EdgeRecord {
  enum class Slot : std::uint8_t { AC = 0, AB = 1 };

  index_t facet = kNone;
  index_t vertex = kNone;
  Slot slot = Slot::AB;

  friend constexpr auto operator<=>(const EdgeRecord& l, const EdgeRecord& r) noexcept {
    if (auto c = l.vertex <=> r.vertex; c != 0) return c;
    if (auto c = l.slot <=> r.slot; c != 0) return c;
    return l.facet <=> r.facet;
  }
  friend constexpr bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

/// Signed distance proxy of `p` from the facet plane, scaled by |normal|.
/// The facet is visible from p iff the result is strictly positive.
template <std::floating_point T>
constexpr T facet_visibility(const Facet<T>& f, const Point3<T>& p, std::span<const Point3<T>> points) noexcept {
  return dot(p - points[f.a], f.normal);
}

template <std::floating_point T>
struct CrossTest {
  int sign = 0;
  Vec3<T> normal{};
};

/// Relative side test inside the plane of A, B, C: compares
/// e = (B-A) x (X-A) against k = (B-A) x (C-A). -1 means X and C are on
/// opposite sides of line AB, so edge AB faces X. `normal` is e.
template <std::floating_point T>
constexpr CrossTest<T> cross_test(std::span<const Point3<T>> points, index_t a, index_t b, index_t c,
                                  index_t x) noexcept {
  const Vec3<T> ab = points[b] - points[a];
  const Vec3<T> e = cross(ab, points[x] - points[a]);
  const Vec3<T> k = cross(ab, points[c] - points[a]);
  const T s = dot(k, e);
  return {s > T(0) ? 1 : (s == T(0) ? 0 : -1), e};
}

enum class CollinearityMode { Exact, Tolerance };

inline constexpr double kCollinearRelTol = 1e-12;

/// True iff (B-A) x (C-A) vanishes. In tolerance mode every component must be
/// within rel_tol * M^2, M the largest coordinate magnitude of the triple.
template <std::floating_point T>
bool collinear(const Point3<T>& a, const Point3<T>& b, const Point3<T>& c,
               CollinearityMode mode = CollinearityMode::Tolerance, double rel_tol = kCollinearRelTol) {
  const Vec3<T> n = triangle_normal(a, b, c);
  if (mode == CollinearityMode::Exact) return is_zero(n);
  T m = 0;
  for (const auto* p : {&a, &b, &c}) m = std::max({m, std::abs(p->x), std::abs(p->y), std::abs(p->z)});
  const T tol = static_cast<T>(rel_tol) * m * m;
  return std::abs(n.x) <= tol && std::abs(n.y) <= tol && std::abs(n.z) <= tol;
}

}  // namespace naw
