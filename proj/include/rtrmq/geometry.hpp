// Copyright 2026 The rtrmq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "rtrmq/core.hpp"
#include "rtrmq/transform.hpp"

namespace rtrmq {

template <typename Real>
struct Vec3 {
  Real x{};
  Real y{};
  Real z{};

  Real operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

template <typename Real>
Vec3<Real> operator-(const Vec3<Real>& a, const Vec3<Real>& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}

template <typename Real>
Vec3<Real> cross(const Vec3<Real>& a, const Vec3<Real>& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

template <typename Real>
Real dot(const Vec3<Real>& a, const Vec3<Real>& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

// Axes: x = element value, y = L (left query bound), z = R (right query bound).
// The right angle sits at v0; v1 shares its L, v2 shares its R.
template <typename Real>
struct Triangle {
  Vec3<Real> v0;
  Vec3<Real> v1;
  Vec3<Real> v2;
  Index primitive_id = 0;

  friend bool operator==(const Triangle&, const Triangle&) = default;
};

enum class GridMode {
  kSquare,  // cell of block b is slot b+1 of a ceil(sqrt(B+1))-wide grid, local unit = 1/n_b
  kLinear,  // linear placement: bx = (b+1) mod B, by = (b+1) / B, local unit = 1/B (debug only)
};

struct Cell {
  std::uint64_t x = 0;
  std::uint64_t y = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Placement of blocks in the L,R plane. Cell (0,0) is reserved for the
/// block-minimums geometry.
class CellLayout {
 public:
  CellLayout(const BlockConfig& cfg, GridMode mode = GridMode::kSquare) : cfg_(cfg), mode_(mode) {}

  const BlockConfig& config() const { return cfg_; }
  GridMode mode() const { return mode_; }

  Cell cell_of_block(std::uint64_t block) const;
  /// Denominator for in-block local coordinates.
  std::uint64_t local_unit() const;

 private:
  BlockConfig cfg_;
  GridMode mode_;
};

/// numerator / denominator + 2 * cell, evaluated in double. Triangle vertices
/// and ray origins share this so both round identically.
inline double grid_coord(std::int64_t numerator, std::uint64_t denominator, std::uint64_t cell) {
  return static_cast<double>(numerator) / static_cast<double>(denominator) + 2.0 * static_cast<double>(cell);
}

/// Triangle covering every query (l, r) of a cell with l <= local <= r:
/// v0 = (x, (local+1)/d + 2cx, (local-1)/d + 2cy), v1 = (x, v0.y, 2cy+2),
/// v2 = (x, 2cx-1, v0.z).
template <typename Real>
Triangle<Real> corner_triangle(float value, std::int64_t local, std::uint64_t denominator, Cell cell,
                               Index primitive_id);

/// Single-scene triangle for element i, normalized by n.
template <typename Real>
Triangle<Real> gen_triangle(const InputArray& arr, Index i);

/// Block-matrix triangle for element i.
template <typename Real>
Triangle<Real> gen_triangle_block(const InputArray& arr, Index i, const CellLayout& layout);

template <typename Real>
Triangle<Real> gen_triangle_block(const InputArray& arr, Index i, const BlockConfig& cfg) {
  return gen_triangle_block<Real>(arr, i, CellLayout(cfg));
}

struct BlockMinimums {
  std::vector<float> values;  // A'
  std::vector<Index> argmin;  // global index of each block's leftmost minimum
};

BlockMinimums compute_block_minimums(const InputArray& arr, const BlockConfig& cfg);

}  // namespace rtrmq
