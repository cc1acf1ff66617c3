// Copyright 2026 The rtrmq Authors
// SPDX-License-Identifier: Apache-2.0

#include "rtrmq/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace rtrmq {

Cell CellLayout::cell_of_block(std::uint64_t block) const {
  const std::uint64_t slot = block + 1;
  if (mode_ == GridMode::kLinear) return {slot % cfg_.num_blocks, slot / cfg_.num_blocks};
  return {slot % cfg_.grid_side, slot / cfg_.grid_side};
}

std::uint64_t CellLayout::local_unit() const {
  return mode_ == GridMode::kLinear ? cfg_.num_blocks : cfg_.block_size;
}

template <typename Real>
Triangle<Real> corner_triangle(float value, std::int64_t local, std::uint64_t denominator, Cell cell,
                               Index primitive_id) {
  const auto x = static_cast<Real>(value);
  const auto l = static_cast<Real>(grid_coord(local + 1, denominator, cell.x));
  const auto r = static_cast<Real>(grid_coord(local - 1, denominator, cell.y));
  const auto top = static_cast<Real>(2.0 * static_cast<double>(cell.y) + 2.0);
  const auto left = static_cast<Real>(2.0 * static_cast<double>(cell.x) - 1.0);
  return {{x, l, r}, {x, l, top}, {x, left, r}, primitive_id};
}

template <typename Real>
Triangle<Real> gen_triangle(const InputArray& arr, Index i) {
  if (i >= arr.size()) throw std::out_of_range("gen_triangle: index out of range");
  return corner_triangle<Real>(arr[i], i, arr.size(), Cell{}, i);
}

template <typename Real>
Triangle<Real> gen_triangle_block(const InputArray& arr, Index i, const CellLayout& layout) {
  if (i >= arr.size()) throw std::out_of_range("gen_triangle_block: index out of range");
  const std::uint64_t nb = layout.config().block_size;
  const std::uint64_t block = i / nb;
  const auto local = static_cast<std::int64_t>(i % nb);
  return corner_triangle<Real>(arr[i], local, layout.local_unit(), layout.cell_of_block(block), i);
}

BlockMinimums compute_block_minimums(const InputArray& arr, const BlockConfig& cfg) {
  if (cfg.n != arr.size() || cfg.block_size == 0) {
    throw ConfigError("block config does not match the input array");
  }
  BlockMinimums mins;
  mins.values.reserve(cfg.num_blocks);
  mins.argmin.reserve(cfg.num_blocks);
  const auto values = arr.values();
  for (std::uint64_t b = 0; b < cfg.num_blocks; ++b) {
    const std::uint64_t begin = b * cfg.block_size;
    const std::uint64_t end = std::min<std::uint64_t>(begin + cfg.block_size, values.size());
    std::uint64_t best = begin;
    for (std::uint64_t i = begin + 1; i < end; ++i) {
      if (values[i] < values[best]) best = i;
    }
    mins.values.push_back(values[best]);
    mins.argmin.push_back(static_cast<Index>(best));
  }
  return mins;
}

template Triangle<float> corner_triangle<float>(float, std::int64_t, std::uint64_t, Cell, Index);
template Triangle<double> corner_triangle<double>(float, std::int64_t, std::uint64_t, Cell, Index);
template Triangle<float> gen_triangle<float>(const InputArray&, Index);
template Triangle<double> gen_triangle<double>(const InputArray&, Index);
template Triangle<float> gen_triangle_block<float>(const InputArray&, Index, const CellLayout&);
template Triangle<double> gen_triangle_block<double>(const InputArray&, Index, const CellLayout&);

}  // namespace rtrmq
