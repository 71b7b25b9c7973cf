#pragma once

// Incremental sweep-hull convex hull builder.
//
// Points are consumed in ascending z(x(y)) order. Each new point is the
// lexicographic maximum of everything inserted so far, so it always lies
// outside the current hull and sees at least one facet touching the previous
// point. The visible region is flood-filled across facet adjacencies, struck
// out, and replaced by a fan of new facets over its horizon. While the input
// is still planar the "hull" is a double-sided polygon made of twin facets
// with opposite normals, grown by add_coplanar().

#include <algorithm>
#include <span>
#include <type_traits>
#include <string>
#include <vector>

#include "naw/chunked_array.hpp"
#include "naw/dedup.hpp"
#include "naw/error.hpp"
#include "naw/geometry.hpp"

namespace naw {

struct HullOptions {
  /// Classic seed behaviour: the first three sorted points
  /// must be non-collinear under exact comparison, else FIRST_TRIPLE_COLLINEAR.
  /// When false (robust mode) the seed scans forward for the first triple
  /// that is non-collinear under the scaled tolerance.
  bool strict_compat = false;
  double collinear_rel_tol = kCollinearRelTol;
  /// Squeeze DEAD facets out of the array between insertions once they
  /// outnumber the live ones (and exceed `reclaim_min`). Renumbering is
  /// order-preserving, so the newest-first scan is unaffected. Ignored in
  /// strict-compat mode, which keeps every DEAD facet until compaction.
  bool reclaim_dead = true;
  std::size_t reclaim_min = std::size_t{1} << 16;
};

struct InsertionStats {
  index_t point = kNone;
  /// Facets struck out by this insertion. Zero for coplanar-phase insertions.
  index_t visible = 0;
  index_t spawned = 0;
  /// Live facets tested, newest first, up to and including the first visible one.
  index_t scan_length = 0;
  bool coplanar = false;
  /// Whether the first visible facet found has the previously inserted point
  /// as a vertex.
  bool anchor_touches_last = false;
};

template <std::floating_point T = double>
struct HullState {
  std::vector<Point3<T>> points;
  ChunkedArray<Facet<T>> facets;
  T sum_x{};
  T sum_y{};
  T sum_z{};
  index_t inserted = 0;
  /// Third seed vertex; the first two are always points 0 and 1.
  index_t seed_third = 2;
  index_t last_inserted = kNone;
  std::size_t dead = 0;
  bool has_volume = false;
  HullOptions options;

  // scratch buffers reused across insertions
  std::vector<index_t> struck;
  std::vector<EdgeRecord> records;

  /// Running mean of every point consumed so far.
  Vec3<T> mean() const noexcept {
    const T n = static_cast<T>(inserted);
    return {sum_x / n, sum_y / n, sum_z / n};
  }

  void accumulate(const Point3<T>& p) noexcept {
    sum_x += p.x;
    sum_y += p.y;
    sum_z += p.z;
    ++inserted;
  }

  std::span<const Point3<T>> point_span() const noexcept { return points; }
};

template <std::floating_point T = double>
struct Triangulation {
  std::vector<Facet<T>> facets;
  /// Unique points in sweep order; facet vertex ids index this array.
  std::vector<Point3<T>> points;
  /// Original input id of each entry of `points`.
  std::vector<index_t> source_ids;
};

namespace detail {

template <std::floating_point T>
void link_records(ChunkedArray<Facet<T>>& facets, const EdgeRecord& r, index_t other) {
  if (r.slot == EdgeRecord::Slot::AB)
    facets[r.facet].nab = other;
  else
    facets[r.facet].nac = other;
}

template <std::floating_point T>
void emit_records(HullState<T>& state, index_t first_fresh) {
  state.records.clear();
  for (index_t q = first_fresh; q < static_cast<index_t>(state.facets.size()); ++q) {
    const Facet<T>& f = state.facets[q];
    if (f.state != FacetState::Fresh) continue;
    state.records.push_back({q, f.b, EdgeRecord::Slot::AB});
    state.records.push_back({q, f.c, EdgeRecord::Slot::AC});
  }
  std::sort(state.records.begin(), state.records.end());
}

template <std::floating_point T>
void promote_fresh(HullState<T>& state, index_t first_fresh) {
  for (index_t q = first_fresh; q < static_cast<index_t>(state.facets.size()); ++q)
    if (state.facets[q].state == FacetState::Fresh) state.facets[q].state = FacetState::Live;
}

template <std::floating_point T>
[[noreturn]] void unmatched(const std::vector<EdgeRecord>& records, std::size_t s, std::size_t e) {
  std::vector<index_t> ids;
  for (std::size_t i = s; i < e; ++i) ids.push_back(records[i].facet);
  throw Error(ErrorCode::UnmatchedEdge,
              "vertex " + std::to_string(records[s].vertex) + " closes " + std::to_string(e - s) +
                  " new edges",
              std::move(ids));
}

/// Spawns {p, u, v} across horizon edge (u, v) of a struck facet, bordering the
/// surviving facet `live`, and points `live` back at it.
template <std::floating_point T>
void spawn_horizon_facet(HullState<T>& state, index_t p, index_t u, index_t v, index_t live) {
  const auto pts = state.point_span();
  Facet<T> f;
  f.id = static_cast<index_t>(state.facets.size());
  f.a = p;
  f.b = u;
  f.c = v;
  f.nbc = live;
  f.state = FacetState::Fresh;

  const Vec3<T> n = triangle_normal(pts[p], pts[u], pts[v]);
  const Vec3<T> inward = state.mean() - pts[p].pos();
  f.normal = dot(inward, n) > T(0) ? -n : n;

  const auto slot = state.facets[live].edge_of(u, v);
  if (!slot)
    throw Error(ErrorCode::NeighborSlotMismatch,
                "facet " + std::to_string(live) + " does not border edge (" + std::to_string(u) + ", " +
                    std::to_string(v) + ")",
                {live, u, v});
  state.facets[live].set_neighbor(*slot, f.id);
  state.facets.push_back(f);
}

template <std::floating_point T>
std::vector<index_t> planar_boundary(const HullState<T>& state) {
  // Boundary edges of the double-sided polygon are the ones linking twins.
  std::vector<std::pair<index_t, index_t>> edges;
  for (std::size_t i = 0; i < state.facets.size(); ++i) {
    const Facet<T>& f = state.facets[i];
    if (!f.live()) continue;
    for (Edge e : kEdges) {
      const index_t nb = f.neighbor(e);
      if (nb >= 0 && nb > f.id && state.facets[nb].same_vertex_set(f)) edges.push_back(f.edge_vertices(e));
    }
  }
  std::vector<index_t> ring;
  if (edges.empty()) return ring;
  ring.push_back(edges.front().first);
  index_t prev = kNone;
  index_t cur = edges.front().first;
  for (std::size_t step = 0; step < edges.size(); ++step) {
    index_t next = kNone;
    for (const auto& [u, v] : edges) {
      if (u == cur && v != prev) next = v;
      else if (v == cur && u != prev) next = u;
      if (next != kNone) break;
    }
    if (next == kNone || next == ring.front()) break;
    ring.push_back(next);
    prev = cur;
    cur = next;
  }
  return ring;
}

}  // namespace detail

/// Seeds the hull with two twin facets over the first usable triple.
///
/// In robust mode a collinear prefix is skipped: the seed becomes (0, 1, k)
/// for the first k making a non-collinear triple, and the skipped points are
/// inserted later in sorted order. The point array itself is never permuted.
template <std::floating_point T>
HullState<T> init_seed(std::vector<Point3<T>> sorted_points, const HullOptions& options = {}) {
  if (sorted_points.size() < 4)
    throw Error(ErrorCode::TooFewPoints, "need at least 4 points, got " + std::to_string(sorted_points.size()));

  HullState<T> state;
  state.points = std::move(sorted_points);
  state.options = options;
  const auto& pts = state.points;
  const index_t n = static_cast<index_t>(pts.size());

  index_t third = 2;
  if (options.strict_compat) {
    if (collinear(pts[0], pts[1], pts[2], CollinearityMode::Exact))
      throw Error(ErrorCode::FirstTripleCollinear, "points 0, 1, 2 are collinear", {0, 1, 2});
  } else {
    while (third < n && collinear(pts[0], pts[1], pts[third], CollinearityMode::Tolerance, options.collinear_rel_tol))
      ++third;
    if (third == n) throw Error(ErrorCode::AllCollinear, "all " + std::to_string(n) + " points are collinear");
  }
  state.seed_third = third;

  const Vec3<T> n0 = triangle_normal(pts[0], pts[1], pts[third]);
  Facet<T> up;
  up.id = 0;
  up.a = 0;
  up.b = 1;
  up.c = third;
  up.nab = up.nbc = up.nac = 1;
  up.normal = n0;
  Facet<T> down = up;
  down.id = 1;
  down.nab = down.nbc = down.nac = 0;
  down.normal = -n0;
  state.facets.push_back(up);
  state.facets.push_back(down);

  state.accumulate(pts[0]);
  state.accumulate(pts[1]);
  state.accumulate(pts[third]);
  state.last_inserted = third;
  return state;
}

/// Stitches the unassigned ab/ac slots of the FRESH facets in
/// [first_fresh, end) into a closed fan, then promotes them to LIVE.
template <std::floating_point T>
void patch_new_adjacencies(HullState<T>& state, index_t first_fresh) {
  detail::emit_records(state, first_fresh);
  const auto& recs = state.records;
  for (std::size_t s = 0; s < recs.size();) {
    std::size_t e = s + 1;
    while (e < recs.size() && recs[e].vertex == recs[s].vertex) ++e;
    if (e - s != 2) detail::unmatched<T>(recs, s, e);
    detail::link_records(state.facets, recs[s], recs[s + 1].facet);
    detail::link_records(state.facets, recs[s + 1], recs[s].facet);
    s = e;
  }
  detail::promote_fresh(state, first_fresh);
}

/// Grows the double-sided planar hull by a point lying in its plane: every
/// boundary edge facing the point gains an up/down twin pair fanned to it.
/// Points inside the polygon, or only collinear with its edges, add nothing.
template <std::floating_point T>
void add_coplanar(HullState<T>& state, index_t p) {
  auto& facets = state.facets;
  const auto pts = state.point_span();
  const index_t first_fresh = static_cast<index_t>(facets.size());

  for (index_t k = 0; k < first_fresh; ++k) {
    if (!facets[k].live()) continue;
    for (Edge e : {Edge::AB, Edge::BC, Edge::AC}) {
      const index_t twin = facets[k].neighbor(e);
      if (twin < 0 || !facets[twin].same_vertex_set(facets[k])) continue;  // interior edge

      const auto [va, vb] = facets[k].edge_vertices(e);
      const index_t vc = facets[k].apex(e);
      const CrossTest<T> ct = cross_test(pts, va, vb, vc, p);
      if (ct.sign >= 0) continue;

      Facet<T> up;
      up.a = p;
      up.b = va;
      up.c = vb;
      up.state = FacetState::Fresh;
      up.id = static_cast<index_t>(facets.size());
      up.normal = ct.normal;
      Facet<T> down = up;
      down.id = up.id + 1;
      down.normal = -ct.normal;

      const auto twin_slot = facets[twin].edge_of(va, vb);
      if (!twin_slot)
        throw Error(ErrorCode::NeighborSlotMismatch, "twin facet does not share boundary edge", {k, twin});

      // The new pair sheet-matches the existing twins by normal direction.
      Facet<T>& same = dot(facets[k].normal, ct.normal) > T(0) ? up : down;
      Facet<T>& other = (&same == &up) ? down : up;
      same.nbc = k;
      other.nbc = twin;
      facets[k].set_neighbor(e, same.id);
      facets[twin].set_neighbor(*twin_slot, other.id);
      facets.push_back(up);
      facets.push_back(down);
    }
  }

  detail::emit_records(state, first_fresh);
  const auto& recs = state.records;
  for (std::size_t s = 0; s < recs.size();) {
    std::size_t e = s + 1;
    while (e < recs.size() && recs[e].vertex == recs[s].vertex) ++e;
    if (e - s == 2) {
      // end of the visible chain: the up/down pair closes on itself
      detail::link_records(facets, recs[s], recs[s + 1].facet);
      detail::link_records(facets, recs[s + 1], recs[s].facet);
    } else if (e - s == 4) {
      // interior chain vertex: two pairs meet, match them by sheet
      std::size_t partner = s + 1;
      while (partner < e && dot(facets[recs[s].facet].normal, facets[recs[partner].facet].normal) <= T(0))
        ++partner;
      if (partner == e) detail::unmatched<T>(recs, s, e);
      std::size_t rest[2];
      std::size_t r = 0;
      for (std::size_t i = s + 1; i < e; ++i)
        if (i != partner) rest[r++] = i;
      detail::link_records(facets, recs[s], recs[partner].facet);
      detail::link_records(facets, recs[partner], recs[s].facet);
      detail::link_records(facets, recs[rest[0]], recs[rest[1]].facet);
      detail::link_records(facets, recs[rest[1]], recs[rest[0]].facet);
    } else {
      detail::unmatched<T>(recs, s, e);
    }
    s = e;
  }
  detail::promote_fresh(state, first_fresh);
}

/// Removes DEAD facets in place, renumbering survivors densely in their
/// original order. Only valid between insertions (no FRESH facets).
template <std::floating_point T>
void reclaim_dead(HullState<T>& state) {
  auto& facets = state.facets;
  std::vector<index_t> taken(facets.size(), kNone);
  index_t count = 0;
  for (std::size_t t = 0; t < facets.size(); ++t)
    if (facets[t].live()) taken[t] = count++;
  for (std::size_t t = 0; t < facets.size(); ++t) {
    if (taken[t] < 0) continue;
    Facet<T> f = facets[t];
    f.id = taken[t];
    for (Edge e : kEdges) {
      const index_t nb = f.neighbor(e);
      f.set_neighbor(e, nb >= 0 ? taken[nb] : kNone);
    }
    facets[static_cast<std::size_t>(f.id)] = f;
  }
  facets.truncate(static_cast<std::size_t>(count));
  state.dead = 0;
}

/// Inserts sorted point `p` (the lexicographic maximum so far) into the hull.
template <std::floating_point T>
InsertionStats insert_point(HullState<T>& state, index_t p) {
  auto& facets = state.facets;
  const auto pts = state.point_span();
  const Point3<T>& pt = pts[p];
  state.accumulate(pt);

  InsertionStats stats;
  stats.point = p;

  index_t first_visible = kNone;
  for (index_t h = static_cast<index_t>(facets.size()) - 1; h >= 0; --h) {
    if (!facets[h].live()) continue;
    ++stats.scan_length;
    if (facet_visibility(facets[h], pt, pts) > T(0)) {
      first_visible = h;
      break;
    }
  }

  if (first_visible < 0) {
    if (state.has_volume)
      throw Error(ErrorCode::NoVisibleFacet,
                  "point " + std::to_string(p) + " sees no facet of a solid hull (duplicate or numeric failure)",
                  {p});
    add_coplanar(state, p);
    stats.coplanar = true;
    state.last_inserted = p;
    return stats;
  }

  stats.anchor_touches_last = facets[first_visible].has_vertex(state.last_inserted);
  state.has_volume = true;

  const index_t first_fresh = static_cast<index_t>(facets.size());
  auto& struck = state.struck;
  struck.clear();
  struck.push_back(first_visible);
  facets[first_visible].state = FacetState::Dead;
  ++state.dead;

  for (std::size_t x = 0; x < struck.size(); ++x) {
    const index_t xid = struck[x];
    for (Edge e : {Edge::AB, Edge::AC, Edge::BC}) {
      const index_t nb = facets[xid].neighbor(e);
      if (facet_visibility(facets[nb], pt, pts) > T(0)) {
        if (facets[nb].state == FacetState::Live) {
          facets[nb].state = FacetState::Dead;
          ++state.dead;
          struck.push_back(nb);
        }
      } else {
        const auto [u, v] = facets[xid].edge_vertices(e);
        detail::spawn_horizon_facet(state, p, u, v, nb);
      }
    }
  }

  stats.visible = static_cast<index_t>(struck.size());
  stats.spawned = static_cast<index_t>(facets.size()) - first_fresh;
  patch_new_adjacencies(state, first_fresh);
  state.last_inserted = p;

  const HullOptions& opt = state.options;
  if (opt.reclaim_dead && !opt.strict_compat && state.dead > opt.reclaim_min &&
      state.dead > facets.size() - state.dead)
    reclaim_dead(state);
  return stats;
}

enum class Dangling {
  Error,     // a kept facet naming a dropped neighbor is BROKEN_HULL
  Boundary,  // such references become -1
};

/// Order-preserving dense renumbering of the facets selected by `keep`.
/// `Facets` is any indexable facet sequence (vector, span, ChunkedArray).
template <class Facets, class Keep>
auto compact(const Facets& facets, Keep keep, Dangling dangling = Dangling::Error) {
  using F = std::remove_cvref_t<decltype(facets[0])>;
  std::vector<index_t> taken(facets.size(), kNone);
  index_t count = 0;
  for (std::size_t t = 0; t < facets.size(); ++t)
    if (keep(facets[t])) taken[t] = count++;

  std::vector<F> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::size_t t = 0; t < facets.size(); ++t) {
    if (taken[t] < 0) continue;
    F f = facets[t];
    f.id = taken[t];
    for (Edge e : kEdges) {
      const index_t old = f.neighbor(e);
      const index_t now = old >= 0 ? taken[old] : kNone;
      if (now < 0 && dangling == Dangling::Error)
        throw Error(ErrorCode::BrokenHull,
                    "facet " + std::to_string(t) + " names dropped neighbor " + std::to_string(old),
                    {static_cast<index_t>(t), old});
      f.set_neighbor(e, now);
    }
    f.state = FacetState::Live;
    out.push_back(f);
  }
  return out;
}

template <class Facets>
auto compact(const Facets& facets) {
  return compact(facets, [](const auto& f) { return f.live(); });
}

/// Runs the full sweep over already sorted, de-duplicated points. The
/// returned state may still be planar (`has_volume == false`).
template <std::floating_point T>
HullState<T> sweep(std::vector<Point3<T>> sorted_unique, const HullOptions& options = {},
                   std::vector<InsertionStats>* stats = nullptr) {
  HullState<T> state = init_seed(std::move(sorted_unique), options);
  const index_t n = static_cast<index_t>(state.points.size());
  if (stats) stats->reserve(stats->size() + static_cast<std::size_t>(n));
  for (index_t p = 2; p < n; ++p) {
    if (p == state.seed_third) continue;
    const InsertionStats s = insert_point(state, p);
    if (stats) stats->push_back(s);
  }
  return state;
}

template <std::floating_point T>
void require_finite(std::span<const Point3<T>> points) {
  for (std::size_t i = 0; i < points.size(); ++i)
    if (!points[i].finite())
      throw Error(ErrorCode::NonFiniteCoordinate, "point " + std::to_string(i) + " has a non-finite coordinate",
                  {static_cast<index_t>(i)});
}

/// Closed convex hull of a point cloud. Exact duplicates are removed first;
/// facet vertex ids index the returned (sorted, unique) point array.
template <std::floating_point T>
Triangulation<T> build_hull(std::span<const Point3<T>> points, const HullOptions& options = {},
                            std::vector<InsertionStats>* stats = nullptr) {
  require_finite(points);
  DedupResult<T> d = dedup(points);
  if (d.unique.size() < 4)
    throw Error(ErrorCode::TooFewPoints,
                "need at least 4 unique points, got " + std::to_string(d.unique.size()));

  HullState<T> state = sweep(std::move(d.unique), options, stats);
  if (!state.has_volume)
    throw Error(ErrorCode::DegenerateCoplanarSet, "all points are coplanar", detail::planar_boundary(state));

  Triangulation<T> tri;
  tri.facets = compact(state.facets);
  tri.points = std::move(state.points);
  tri.source_ids = std::move(d.source_ids);
  return tri;
}

template <std::floating_point T>
Triangulation<T> build_hull(const std::vector<Point3<T>>& points, const HullOptions& options = {},
                            std::vector<InsertionStats>* stats = nullptr) {
  return build_hull(std::span<const Point3<T>>(points), options, stats);
}

}  // namespace naw
