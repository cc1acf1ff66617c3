// Copyright 2026 The rtrmq Authors
// SPDX-License-Identifier: Apache-2.0

#include "rtrmq/bvh.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace rtrmq {

template <typename Real>
void Aabb<Real>::extend(const Vec3<Real>& p) {
  lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
  hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
}

template <typename Real>
void Aabb<Real>::extend(const Aabb& b) {
  extend(b.lo);
  extend(b.hi);
}

template <typename Real>
bool Aabb<Real>::contains(const Aabb& b) const {
  return lo.x <= b.lo.x && lo.y <= b.lo.y && lo.z <= b.lo.z && hi.x >= b.hi.x && hi.y >= b.hi.y &&
         hi.z >= b.hi.z;
}

template <typename Real>
int Aabb<Real>::longest_axis() const {
  const Real dx = hi.x - lo.x;
  const Real dy = hi.y - lo.y;
  const Real dz = hi.z - lo.z;
  if (dx >= dy && dx >= dz) return 0;
  return dy >= dz ? 1 : 2;
}

template <typename Real>
Aabb<Real> bounds_of(const Triangle<Real>& tri) {
  Aabb<Real> box;
  box.lo = {std::min({tri.v0.x, tri.v1.x, tri.v2.x}), std::min({tri.v0.y, tri.v1.y, tri.v2.y}),
            std::min({tri.v0.z, tri.v1.z, tri.v2.z})};
  box.hi = {std::max({tri.v0.x, tri.v1.x, tri.v2.x}), std::max({tri.v0.y, tri.v1.y, tri.v2.y}),
            std::max({tri.v0.z, tri.v1.z, tri.v2.z})};
  return box;
}

template <typename Real>
std::optional<Real> intersect_ray_aabb(const Ray<Real>& ray, const Aabb<Real>& box) {
  Real t_near = ray.t_min;
  Real t_far = ray.t_max;
  for (int axis = 0; axis < 3; ++axis) {
    const Real o = ray.origin[axis];
    const Real d = ray.direction[axis];
    const Real lo = box.lo[axis];
    const Real hi = box.hi[axis];
    if (d == Real(0)) {
      if (o < lo || o > hi) return std::nullopt;
      continue;
    }
    Real t0 = (lo - o) / d;
    Real t1 = (hi - o) / d;
    if (t0 > t1) std::swap(t0, t1);
    t_near = std::max(t_near, t0);
    t_far = std::min(t_far, t1);
    if (t_near > t_far) return std::nullopt;
  }
  return t_near;
}

namespace {

/// Intersection with the triangle's bounds supplied by the caller.
template <typename Real>
std::optional<Real> intersect_with_bounds(const Ray<Real>& ray, const Triangle<Real>& tri, const Aabb<Real>& box) {
  if (ray.direction.x == Real(0)) return std::nullopt;
  // Plane x = v0.x; the hit point keeps the origin's (L, R) for +X rays.
  const Real t = (tri.v0.x - ray.origin.x) / ray.direction.x;
  if (!(t >= ray.t_min && t <= ray.t_max)) return std::nullopt;

  // Hit point must lie inside the triangle's bounds, same inclusive test the
  // BVH applies to node boxes, so leaf hits and node culling never disagree.
  const Real py = ray.origin.y + t * ray.direction.y;
  const Real pz = ray.origin.z + t * ray.direction.z;
  if (py < box.lo.y || py > box.hi.y || pz < box.lo.z || pz > box.hi.z) return std::nullopt;

  const Vec3<Real> e1 = tri.v1 - tri.v0;
  const Vec3<Real> e2 = tri.v2 - tri.v0;
  const Vec3<Real> h = cross(ray.direction, e2);
  const Real det = dot(e1, h);
  if (det == Real(0) || !std::isfinite(det)) return std::nullopt;
  const Real inv_det = Real(1) / det;
  const Vec3<Real> s = ray.origin - tri.v0;
  const Real u = inv_det * dot(s, h);  // weight of v1; zero on the v0-v2 leg
  if (!(u > Real(0))) return std::nullopt;
  const Vec3<Real> q = cross(s, e1);
  const Real v = inv_det * dot(ray.direction, q);  // weight of v2; zero on the v0-v1 leg
  if (!(v > Real(0)) || u + v > Real(1)) return std::nullopt;
  return t;
}

}  // namespace

template <typename Real>
std::optional<Real> intersect_ray_triangle(const Ray<Real>& ray, const Triangle<Real>& tri) {
  return intersect_with_bounds(ray, tri, bounds_of(tri));
}

template <typename Real>
Bvh<Real>::Bvh(std::span<const Triangle<Real>> triangles) {
  if (triangles.empty()) throw std::invalid_argument("build_bvh: no triangles");
  if (triangles.size() > std::numeric_limits<std::uint32_t>::max() / 2) {
    throw std::length_error("build_bvh: too many triangles");
  }
  const auto n = static_cast<std::uint32_t>(triangles.size());
  std::vector<Aabb<Real>> boxes(n);
  std::vector<Vec3<Real>> centroids(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const Triangle<Real>& tri = triangles[i];
    boxes[i] = bounds_of(tri);
    centroids[i] = {(tri.v0.x + tri.v1.x + tri.v2.x) / Real(3), (tri.v0.y + tri.v1.y + tri.v2.y) / Real(3),
                    (tri.v0.z + tri.v1.z + tri.v2.z) / Real(3)};
  }
  std::vector<std::uint32_t> order(n);
  for (std::uint32_t i = 0; i < n; ++i) order[i] = i;
  nodes_.reserve(2 * (n / kMaxLeafSize + 1));
  build(order, 0, n, boxes, centroids, 1);
  triangles_.reserve(n);
  triangle_boxes_.reserve(n);
  for (const std::uint32_t i : order) {
    triangles_.push_back(triangles[i]);
    triangle_boxes_.push_back(boxes[i]);
  }
}

template <typename Real>
std::uint32_t Bvh<Real>::build(std::vector<std::uint32_t>& order, std::uint32_t begin, std::uint32_t end,
                               const std::vector<Aabb<Real>>& boxes, const std::vector<Vec3<Real>>& centroids,
                               std::size_t level) {
  depth_ = std::max(depth_, level);
  const auto index = static_cast<std::uint32_t>(nodes_.size());
  nodes_.emplace_back();
  Aabb<Real> box;
  for (std::uint32_t i = begin; i < end; ++i) box.extend(boxes[order[i]]);
  nodes_[index].box = box;

  const std::uint32_t count = end - begin;
  if (count <= kMaxLeafSize) {
    nodes_[index].offset = begin;
    nodes_[index].count = count;
    return index;
  }

  const int axis = box.longest_axis();
  const std::uint32_t mid = begin + count / 2;
  std::nth_element(order.begin() + begin, order.begin() + mid, order.begin() + end,
                   [&](std::uint32_t a, std::uint32_t b) {
                     const Real ca = centroids[a][axis];
                     const Real cb = centroids[b][axis];
                     return ca < cb || (ca == cb && a < b);
                   });
  build(order, begin, mid, boxes, centroids, level + 1);
  const std::uint32_t right = build(order, mid, end, boxes, centroids, level + 1);
  nodes_[index].offset = right;
  return index;
}

namespace {

/// Per-ray slab data. Unit components multiply by their reciprocal, which is
/// bitwise-identical to dividing; other components divide.
template <typename Real>
struct SlabRay {
  Real origin[3];
  Real dir[3];
  bool unit[3];
  Real t_min, t_max;

  explicit SlabRay(const Ray<Real>& ray)
      : origin{ray.origin.x, ray.origin.y, ray.origin.z},
        dir{ray.direction.x, ray.direction.y, ray.direction.z},
        unit{std::abs(dir[0]) == Real(1), std::abs(dir[1]) == Real(1), std::abs(dir[2]) == Real(1)},
        t_min(ray.t_min),
        t_max(ray.t_max) {}

  /// Same result as intersect_ray_aabb; returns false on a miss.
  bool enter(const Aabb<Real>& box, Real& entry) const {
    Real t_near = t_min;
    Real t_far = t_max;
    // Axis order does not change the result; the L and R slabs reject most boxes for +X rays.
    if (!slab(1, box.lo.y, box.hi.y, t_near, t_far) || !slab(2, box.lo.z, box.hi.z, t_near, t_far) ||
        !slab(0, box.lo.x, box.hi.x, t_near, t_far)) {
      return false;
    }
    entry = t_near;
    return true;
  }

  bool slab(int a, Real lo, Real hi, Real& t_near, Real& t_far) const {
    if (dir[a] == Real(0)) return !(origin[a] < lo || origin[a] > hi);
    Real t0 = unit[a] ? (lo - origin[a]) * dir[a] : (lo - origin[a]) / dir[a];
    Real t1 = unit[a] ? (hi - origin[a]) * dir[a] : (hi - origin[a]) / dir[a];
    if (t0 > t1) std::swap(t0, t1);
    t_near = std::max(t_near, t0);
    t_far = std::min(t_far, t1);
    return !(t_near > t_far);
  }
};

}  // namespace

template <typename Real>
HitRecord<Real> Bvh<Real>::closest_hit(const Ray<Real>& ray) const {
  struct Pending {
    std::uint32_t node;
    Real t;
  };
  // Median splits halve the node count, so depth stays below 33 for any 32-bit scene.
  std::array<Pending, 96> stack;
  std::size_t top = 0;

  const SlabRay<Real> slab(ray);
  HitRecord<Real> best;
  Real root_t = 0;
  if (!slab.enter(nodes_[0].box, root_t)) return best;
  stack[top++] = {0, root_t};

  while (top > 0) {
    const Pending entry = stack[--top];
    // Equal entry t may still hold a tie with a smaller id: only prune strictly farther nodes.
    if (best.hit && entry.t > best.t) continue;
    const BvhNode<Real>& node = nodes_[entry.node];
    if (node.is_leaf()) {
      for (std::uint32_t i = node.offset; i < node.offset + node.count; ++i) {
        const Triangle<Real>& tri = triangles_[i];
        // Plane distance as computed by the intersection test; farther planes cannot win.
        if (best.hit && (tri.v0.x - ray.origin.x) / ray.direction.x > best.t) continue;
        if (const auto t = intersect_with_bounds(ray, tri, triangle_boxes_[i])) {
          const HitRecord<Real> candidate{true, *t, tri.v0.x, tri.primitive_id};
          if (closer(candidate, best)) best = candidate;
        }
      }
      continue;
    }
    const std::uint32_t left = entry.node + 1;
    const std::uint32_t right = node.offset;
    Real t_left = 0;
    Real t_right = 0;
    const bool take_left = slab.enter(nodes_[left].box, t_left) && !(best.hit && t_left > best.t);
    const bool take_right = slab.enter(nodes_[right].box, t_right) && !(best.hit && t_right > best.t);
    if (take_left && take_right) {
      // Push the farther child first so the nearer one is explored first.
      if (t_left <= t_right) {
        stack[top++] = {right, t_right};
        stack[top++] = {left, t_left};
      } else {
        stack[top++] = {left, t_left};
        stack[top++] = {right, t_right};
      }
    } else if (take_left) {
      stack[top++] = {left, t_left};
    } else if (take_right) {
      stack[top++] = {right, t_right};
    }
  }
  return best;
}

template <typename Real>
HitRecord<Real> closest_hit_brute_force(std::span<const Triangle<Real>> triangles, const Ray<Real>& ray) {
  HitRecord<Real> best;
  for (const Triangle<Real>& tri : triangles) {
    if (const auto t = intersect_ray_triangle(ray, tri)) {
      const HitRecord<Real> candidate{true, *t, tri.v0.x, tri.primitive_id};
      if (closer(candidate, best)) best = candidate;
    }
  }
  return best;
}

#define RTRMQ_INSTANTIATE_BVH(Real)                                                                     \
  template struct Aabb<Real>;                                                                           \
  template Aabb<Real> bounds_of<Real>(const Triangle<Real>&);                                          \
  template std::optional<Real> intersect_ray_aabb<Real>(const Ray<Real>&, const Aabb<Real>&);          \
  template std::optional<Real> intersect_ray_triangle<Real>(const Ray<Real>&, const Triangle<Real>&);  \
  template class Bvh<Real>;                                                                             \
  template HitRecord<Real> closest_hit_brute_force<Real>(std::span<const Triangle<Real>>, const Ray<Real>&);

RTRMQ_INSTANTIATE_BVH(float)
RTRMQ_INSTANTIATE_BVH(double)

#undef RTRMQ_INSTANTIATE_BVH

}  // namespace rtrmq
