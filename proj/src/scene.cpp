// Copyright 2026 The rtrmq Authors
// SPDX-License-Identifier: Apache-2.0

#include "rtrmq/scene.hpp"

#include <cstdio>
#include <limits>
#include <ostream>

namespace rtrmq {

BlockLookupTable::BlockLookupTable(std::span<const float> block_minimums)
    : num_blocks_(block_minimums.size()) {
  table_.resize(num_blocks_ * (num_blocks_ + 1) / 2);
  std::size_t k = 0;
  for (std::size_t a = 0; a < num_blocks_; ++a) {
    auto best = static_cast<Index>(a);
    for (std::size_t b = a; b < num_blocks_; ++b) {
      if (block_minimums[b] < block_minimums[best]) best = static_cast<Index>(b);
      table_[k++] = best;
    }
  }
}

template <typename Real>
Scene<Real> Scene<Real>::build(const InputArray& arr, const SceneOptions& options) {
  Scene scene;
  const std::size_t n = arr.size();
  scene.num_elements_ = n;
  scene.blockmin_ = options.blockmin;

  if (!options.blocks) {
    if (n > kMaxSingleLayout) {
      throw ConfigError("single layout supports at most 2^24 elements, got " + std::to_string(n));
    }
    scene.layout_ = Layout::kSingle;
    scene.triangles_.reserve(n);
    for (Index i = 0; i < n; ++i) scene.triangles_.push_back(gen_triangle<Real>(arr, i));
  } else {
    const BlockConfig& cfg = *options.blocks;
    if (cfg.n != n) throw ConfigError("block config built for n=" + std::to_string(cfg.n) +
                                      " but the array has " + std::to_string(n) + " elements");
    const GateReport gate = evaluate_gate(cfg.n, cfg.block_size);
    if (!gate.ok()) throw ConfigError("precision gate failed: " + gate.describe());
    if (cfg.num_blocks != gate.num_blocks || cfg.grid_side * cfg.grid_side < cfg.num_blocks + 1) {
      throw ConfigError("inconsistent block config");
    }
    // The linear grid uses unit 1/B for local coordinates, so a block must not outgrow B.
    if (options.grid == GridMode::kLinear && cfg.block_size > cfg.num_blocks) {
      throw ConfigError("linear grid needs block_size <= num_blocks, got " + std::to_string(cfg.block_size) +
                        " > " + std::to_string(cfg.num_blocks));
    }

    scene.layout_ = Layout::kBlockMatrix;
    scene.cells_.emplace(cfg, options.grid);
    scene.block_minimums_ = compute_block_minimums(arr, cfg);

    const bool block_geometry = options.blockmin == BlockMinStrategy::kGeometry;
    scene.triangles_.reserve(n + (block_geometry ? cfg.num_blocks : 0));
    for (Index i = 0; i < n; ++i) scene.triangles_.push_back(gen_triangle_block<Real>(arr, i, *scene.cells_));
    if (block_geometry) {
      const auto& mins = scene.block_minimums_.values;
      for (Index b = 0; b < cfg.num_blocks; ++b) {
        scene.triangles_.push_back(corner_triangle<Real>(mins[b], b, cfg.num_blocks, Cell{0, 0}, b));
      }
    } else {
      scene.lookup_.emplace(scene.block_minimums_.values);
    }
  }

  scene.bvh_.emplace(std::span<const Triangle<Real>>(scene.triangles_));
  return scene;
}

template <typename Real>
void Scene<Real>::dump(std::ostream& os) const {
  const int digits = std::numeric_limits<Real>::max_digits10;
  char buf[64];
  auto put = [&](Real v) {
    std::snprintf(buf, sizeof(buf), " %.*g", digits, static_cast<double>(v));
    os << buf;
  };
  for (const Triangle<Real>& tri : triangles_) {
    os << tri.primitive_id;
    for (const Vec3<Real>* v : {&tri.v0, &tri.v1, &tri.v2}) {
      put(v->x);
      put(v->y);
      put(v->z);
    }
    os << '\n';
  }
}

template class Scene<float>;
template class Scene<double>;

}  // namespace rtrmq
