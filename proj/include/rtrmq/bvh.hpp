// Copyright 2026 The rtrmq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "rtrmq/geometry.hpp"

namespace rtrmq {

inline constexpr Index kNoPrimitive = std::numeric_limits<Index>::max();

/// Rays in this library always travel along +X.
template <typename Real>
struct Ray {
  Vec3<Real> origin;
  Vec3<Real> direction{Real(1), Real(0), Real(0)};
  Real t_min = Real(0);
  Real t_max = std::numeric_limits<Real>::infinity();
};

template <typename Real>
struct HitRecord {
  bool hit = false;
  Real t = std::numeric_limits<Real>::infinity();
  Real value = Real(0);  // x of the hit plane
  Index primitive_id = kNoPrimitive;

  friend bool operator==(const HitRecord&, const HitRecord&) = default;
};

/// Closest-hit order: smaller t, then smaller hit-plane value, then smaller
/// primitive id. t is monotone in the plane value, so the second key only
/// separates distinct values that rounded to the same t.
template <typename Real>
bool closer(const HitRecord<Real>& a, const HitRecord<Real>& b) {
  if (!a.hit) return false;
  if (!b.hit) return true;
  if (a.t != b.t) return a.t < b.t;
  if (a.value != b.value) return a.value < b.value;
  return a.primitive_id < b.primitive_id;
}

template <typename Real>
struct Aabb {
  Vec3<Real> lo{std::numeric_limits<Real>::infinity(), std::numeric_limits<Real>::infinity(),
                std::numeric_limits<Real>::infinity()};
  Vec3<Real> hi{-std::numeric_limits<Real>::infinity(), -std::numeric_limits<Real>::infinity(),
                -std::numeric_limits<Real>::infinity()};

  void extend(const Vec3<Real>& p);
  void extend(const Aabb& b);
  bool contains(const Aabb& b) const;
  int longest_axis() const;
};

template <typename Real>
Aabb<Real> bounds_of(const Triangle<Real>& tri);

/// Entry parameter of the ray into the box, clipped to [t_min, t_max], or
/// nullopt on a miss. Zero direction components are handled as slab
/// containment checks so no 0 * inf terms arise.
template <typename Real>
std::optional<Real> intersect_ray_aabb(const Ray<Real>& ray, const Aabb<Real>& box);

/// Möller–Trumbore barycentric test. The two legs meeting at v0 (the
/// triangle's right and bottom borders) are exclusive, the hypotenuse is
/// inclusive. t is taken from the plane offset along the ray, so coplanar
/// triangles report bitwise-equal t. Degenerate triangles never hit.
template <typename Real>
std::optional<Real> intersect_ray_triangle(const Ray<Real>& ray, const Triangle<Real>& tri);

template <typename Real>
struct BvhNode {
  Aabb<Real> box;
  // Interior: left child is the next node, `offset` is the right child.
  // Leaf: triangles [offset, offset + count) of the reordered array.
  std::uint32_t offset = 0;
  std::uint32_t count = 0;

  bool is_leaf() const { return count > 0; }
};

/// Binary BVH, median split on the longest axis of each node's AABB,
/// leaves hold at most kMaxLeafSize triangles. Immutable after build.
template <typename Real>
class Bvh {
 public:
  static constexpr std::uint32_t kMaxLeafSize = 4;

  explicit Bvh(std::span<const Triangle<Real>> triangles);

  HitRecord<Real> closest_hit(const Ray<Real>& ray) const;

  std::span<const BvhNode<Real>> nodes() const { return nodes_; }
  /// Triangles in leaf order.
  std::span<const Triangle<Real>> triangles() const { return triangles_; }
  const Aabb<Real>& bounds() const { return nodes_.front().box; }
  std::size_t depth() const { return depth_; }

 private:
  std::uint32_t build(std::vector<std::uint32_t>& order, std::uint32_t begin, std::uint32_t end,
                      const std::vector<Aabb<Real>>& boxes, const std::vector<Vec3<Real>>& centroids,
                      std::size_t level);

  std::vector<BvhNode<Real>> nodes_;
  std::vector<Triangle<Real>> triangles_;
  std::vector<Aabb<Real>> triangle_boxes_;  // parallel to triangles_
  std::size_t depth_ = 0;
};

template <typename Real>
Bvh<Real> build_bvh(std::span<const Triangle<Real>> triangles) {
  return Bvh<Real>(triangles);
}

template <typename Real>
HitRecord<Real> closest_hit(const Bvh<Real>& bvh, const Ray<Real>& ray) {
  return bvh.closest_hit(ray);
}

/// Reference: test every triangle, keep the closest by the same order.
template <typename Real>
HitRecord<Real> closest_hit_brute_force(std::span<const Triangle<Real>> triangles, const Ray<Real>& ray);

}  // namespace rtrmq
