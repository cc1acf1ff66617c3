// Copyright 2026 The rtrmq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "rtrmq/bvh.hpp"
#include "rtrmq/geometry.hpp"

namespace rtrmq {

enum class Layout { kSingle, kBlockMatrix };
enum class BlockMinStrategy { kGeometry, kLookupTable };

/// All-pairs answers over the block minimums: entry (a, b), a <= b, is the
/// block holding the leftmost minimum of A'[a..b]. Upper triangle only,
/// B * (B + 1) / 2 entries.
class BlockLookupTable {
 public:
  explicit BlockLookupTable(std::span<const float> block_minimums);

  Index argmin(Index a, Index b) const { return table_[row_offset(a) + (b - a)]; }
  std::size_t num_blocks() const { return num_blocks_; }
  std::size_t entries() const { return table_.size(); }

 private:
  std::size_t row_offset(std::size_t a) const { return a * num_blocks_ - a * (a - 1) / 2; }

  std::size_t num_blocks_ = 0;
  std::vector<Index> table_;
};

struct SceneOptions {
  std::optional<BlockConfig> blocks;  // absent: single layout
  BlockMinStrategy blockmin = BlockMinStrategy::kGeometry;
  GridMode grid = GridMode::kSquare;
};

/// Triangles plus acceleration structure. Element triangles come first, in
/// index order; with the geometry strategy the block-minimum triangles
/// follow, ids equal to their block index.
template <typename Real>
class Scene {
 public:
  static Scene build(const InputArray& arr, const SceneOptions& options);

  Layout layout() const { return layout_; }
  std::size_t num_elements() const { return num_elements_; }
  const std::optional<CellLayout>& cells() const { return cells_; }
  BlockMinStrategy blockmin_strategy() const { return blockmin_; }
  const BlockMinimums& block_minimums() const { return block_minimums_; }
  const std::optional<BlockLookupTable>& lookup_table() const { return lookup_; }
  std::span<const Triangle<Real>> triangles() const { return triangles_; }
  const Bvh<Real>& bvh() const { return *bvh_; }

  HitRecord<Real> closest_hit(const Ray<Real>& ray) const { return bvh_->closest_hit(ray); }

  /// One triangle per line: `id v0x v0y v0z v1x v1y v1z v2x v2y v2z`.
  void dump(std::ostream& os) const;

 private:
  Scene() = default;

  Layout layout_ = Layout::kSingle;
  std::size_t num_elements_ = 0;
  std::optional<CellLayout> cells_;
  BlockMinStrategy blockmin_ = BlockMinStrategy::kGeometry;
  BlockMinimums block_minimums_;
  std::optional<BlockLookupTable> lookup_;
  std::vector<Triangle<Real>> triangles_;
  std::optional<Bvh<Real>> bvh_;
};

template <typename Real>
Scene<Real> build_scene(const InputArray& arr, const SceneOptions& options) {
  return Scene<Real>::build(arr, options);
}

}  // namespace rtrmq
