#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <vector>

#include "naw/geometry.hpp"

namespace naw {

template <std::floating_point T>
struct DedupResult {
  /// Unique points in sweep order, re-id'd 0..n-1.
  std::vector<Point3<T>> unique;
  /// Original ids of discarded exact duplicates.
  std::vector<index_t> removed;
  /// Original id of each entry of `unique`.
  std::vector<index_t> source_ids;
};

/// Sorts by compare_points and drops exact-coordinate duplicates, keeping the
/// first occurrence in sorted order (ties keep the earliest input).
///
/// A point's original id is its `id` field when assigned, else its position.
template <std::floating_point T>
DedupResult<T> dedup(std::span<const Point3<T>> points) {
  std::vector<index_t> order(points.size());
  std::iota(order.begin(), order.end(), index_t{0});
  std::sort(order.begin(), order.end(), [&](index_t l, index_t r) {
    const auto c = compare_points(points[l], points[r]);
    return c != 0 ? c < 0 : l < r;
  });

  auto original_id = [&](index_t k) { return points[k].id >= 0 ? points[k].id : k; };

  DedupResult<T> out;
  out.unique.reserve(points.size());
  out.source_ids.reserve(points.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const index_t k = order[i];
    if (i > 0 && same_coordinates(points[k], points[order[i - 1]])) {
      out.removed.push_back(original_id(k));
      continue;
    }
    Point3<T> p = points[k];
    p.id = static_cast<index_t>(out.unique.size());
    out.unique.push_back(p);
    out.source_ids.push_back(original_id(k));
  }
  return out;
}

template <std::floating_point T>
DedupResult<T> dedup(const std::vector<Point3<T>>& points) {
  return dedup(std::span<const Point3<T>>(points));
}

}  // namespace naw
