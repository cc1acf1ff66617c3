// Copyright 2026 The rtrmq Authors
// SPDX-License-Identifier: Apache-2.0

#include "rtrmq/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

namespace rtrmq {

template <typename Real>
Solver<Real> Solver<Real>::build(InputArray arr, const SolverOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  SceneOptions scene_options;
  scene_options.blockmin = options.blockmin;
  scene_options.grid = options.grid;
  if (options.layout == Layout::kBlockMatrix) {
    scene_options.blocks = options.blocks ? *options.blocks : choose_block_size(arr.size(), options.block_size_hint);
  }
  Scene<Real> scene = Scene<Real>::build(arr, scene_options);
  const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
  SolverOptions resolved = options;
  resolved.blocks = scene_options.blocks;
  return Solver(std::move(arr), std::move(scene), resolved, elapsed.count());
}

template <typename Real>
std::optional<BlockConfig> Solver<Real>::block_config() const {
  if (!scene_.cells()) return std::nullopt;
  return scene_.cells()->config();
}

template <typename Real>
HitRecord<Real> Solver<Real>::cast(std::int64_t l_local, std::int64_t r_local, std::uint64_t unit,
                                   Cell cell) const {
  Ray<Real> ray;
  ray.origin = {static_cast<Real>(arr_.theta()), static_cast<Real>(grid_coord(l_local, unit, cell.x)),
                static_cast<Real>(grid_coord(r_local, unit, cell.y))};
  return scene_.closest_hit(ray);
}

template <typename Real>
void Solver<Real>::check_payload(const HitRecord<Real>& hit, float value) const {
  const auto theta = static_cast<Real>(arr_.theta());
  const Real scale = std::max(std::abs(theta), std::abs(hit.t));
  const Real ulp = std::nextafter(scale, std::numeric_limits<Real>::infinity()) - scale;
  const Real reconstructed = theta + hit.t;
  if (!(std::abs(reconstructed - static_cast<Real>(value)) <= ulp)) {
    throw InternalError("payload mismatch: theta + t = " + std::to_string(reconstructed) + ", element value " +
                        std::to_string(value));
  }
}

template <typename Real>
RmqAnswer Solver<Real>::element_answer(const HitRecord<Real>& hit, const Query& q) const {
  if (!hit.hit || hit.primitive_id >= arr_.size()) {
    throw InternalError("ray for query (" + std::to_string(q.l) + "," + std::to_string(q.r) +
                        ") missed every element triangle");
  }
  const float value = arr_[hit.primitive_id];
  if (options_.check_payload) check_payload(hit, value);
  return {hit.primitive_id, value};
}

template <typename Real>
RmqAnswer Solver<Real>::solve_single(const Query& q) const {
  validate_query(arr_.size(), q);
  if (scene_.layout() != Layout::kSingle) throw std::logic_error("solve_single on a block-matrix scene");
  return element_answer(cast(q.l, q.r, arr_.size(), Cell{}), q);
}

template <typename Real>
RmqAnswer Solver<Real>::element_ray(Index block, const Query& part) const {
  const CellLayout& layout = *scene_.cells();
  const std::uint64_t base = std::uint64_t{block} * layout.config().block_size;
  const auto l_local = static_cast<std::int64_t>(part.l) - static_cast<std::int64_t>(base);
  const auto r_local = static_cast<std::int64_t>(part.r) - static_cast<std::int64_t>(base);
  return element_answer(cast(l_local, r_local, layout.local_unit(), layout.cell_of_block(block)), part);
}

template <typename Real>
RmqAnswer Solver<Real>::block_ray(Index first_block, Index last_block) const {
  const BlockMinimums& mins = scene_.block_minimums();
  Index block = 0;
  if (const auto& table = scene_.lookup_table()) {
    block = table->argmin(first_block, last_block);
  } else {
    const HitRecord<Real> hit = cast(first_block, last_block, mins.values.size(), Cell{0, 0});
    if (!hit.hit || hit.primitive_id >= mins.values.size()) {
      throw InternalError("block-level ray (" + std::to_string(first_block) + "," + std::to_string(last_block) +
                          ") missed the block-minimum triangles");
    }
    block = hit.primitive_id;
    if (options_.check_payload) check_payload(hit, mins.values[block]);
  }
  return {mins.argmin[block], mins.values[block]};
}

template <typename Real>
BlockDecomposition Solver<Real>::decompose(const Query& q) const {
  validate_query(arr_.size(), q);
  if (scene_.layout() != Layout::kBlockMatrix) throw std::logic_error("solve_block on a single-layout scene");
  const BlockConfig& cfg = scene_.cells()->config();
  const auto nb = static_cast<Index>(cfg.block_size);
  const auto last = static_cast<Index>(arr_.size() - 1);

  BlockDecomposition d;
  d.left_block = q.l / nb;
  d.right_block = q.r / nb;
  if (d.left_block == d.right_block) {
    d.single_block = true;
    d.left_part = q;
    d.left = element_ray(d.left_block, q);
    d.combined = *d.left;
    return d;
  }

  const Index left_end = std::min<Index>((d.left_block + 1) * nb - 1, last);
  const auto right_begin = static_cast<Index>(std::int64_t{d.right_block} * nb + options_.fault_right_begin_offset);
  d.left_part = {q.l, left_end};
  d.right_part = {right_begin, q.r};
  d.left = element_ray(d.left_block, d.left_part);
  d.right = element_ray(d.right_block, d.right_part);
  d.combined = *d.left;
  if (d.right_block - d.left_block > 1) {
    d.middle_blocks = Query{d.left_block + 1, d.right_block - 1};
    d.middle = block_ray(d.left_block + 1, d.right_block - 1);
    if (better(*d.middle, d.combined)) d.combined = *d.middle;
  }
  if (better(*d.right, d.combined)) d.combined = *d.right;
  return d;
}

template <typename Real>
RmqAnswer Solver<Real>::solve_block(const Query& q) const {
  return decompose(q).combined;
}

template <typename Real>
RmqAnswer Solver<Real>::solve(const Query& q) const {
  return scene_.layout() == Layout::kSingle ? solve_single(q) : solve_block(q);
}

template <typename Real>
BatchResult solve_batch(const Solver<Real>& solver, const QueryBatch& batch, unsigned threads) {
  const std::size_t count = batch.queries.size();
  BatchResult result;
  result.answers.resize(count);
  if (count == 0) return result;
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::min<std::size_t>(count, 1024)));

  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::size_t> error_at(threads, count);
  const std::size_t chunk = (count + threads - 1) / threads;
  auto work = [&](unsigned w) {
    const std::size_t begin = std::min(count, w * chunk);
    const std::size_t end = std::min(count, begin + chunk);
    for (std::size_t i = begin; i < end; ++i) {
      try {
        result.answers[i] = solver.solve(batch.queries[i]);
      } catch (...) {
        errors[w] = std::current_exception();
        error_at[w] = i;
        return;
      }
    }
  };

  const auto start = std::chrono::steady_clock::now();
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }
  const std::chrono::duration<double, std::nano> elapsed = std::chrono::steady_clock::now() - start;

  // Chunks are contiguous, so the first failing worker holds the lowest index.
  for (unsigned w = 0; w < threads; ++w) {
    if (errors[w]) std::rethrow_exception(errors[w]);
  }
  result.elapsed_ns = elapsed.count();
  result.ns_per_rmq = result.elapsed_ns / static_cast<double>(count);
  return result;
}

template class Solver<float>;
template class Solver<double>;
template BatchResult solve_batch<float>(const Solver<float>&, const QueryBatch&, unsigned);
template BatchResult solve_batch<double>(const Solver<double>&, const QueryBatch&, unsigned);

}  // namespace rtrmq
