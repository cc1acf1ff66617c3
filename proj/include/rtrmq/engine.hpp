// Copyright 2026 The rtrmq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rtrmq/core.hpp"
#include "rtrmq/scene.hpp"

namespace rtrmq {

struct SolverOptions {
  Layout layout = Layout::kBlockMatrix;
  /// Explicit block configuration; takes precedence over the hint.
  std::optional<BlockConfig> blocks;
  /// Passed to choose_block_size when `blocks` is absent.
  std::optional<std::uint64_t> block_size_hint;
  BlockMinStrategy blockmin = BlockMinStrategy::kGeometry;
  GridMode grid = GridMode::kSquare;
  /// Reconstruct each hit's value as theta + t and compare with the stored
  /// element (one ulp at the ray-parameter scale).
  bool check_payload = false;
  /// Test hook: shifts the first index of the right partial block. Zero in
  /// any real use.
  std::int64_t fault_right_begin_offset = 0;
};

/// The three sub-queries of a multi-block query and their answers.
struct BlockDecomposition {
  bool single_block = false;
  Index left_block = 0;
  Index right_block = 0;
  Query left_part;                       // [l, end of left block]
  Query right_part;                      // [start of right block, r]
  std::optional<Query> middle_blocks;    // block indices [b_l + 1, b_r - 1]
  std::optional<RmqAnswer> left;
  std::optional<RmqAnswer> right;
  std::optional<RmqAnswer> middle;       // element index and value via the block argmins
  RmqAnswer combined;
};

/// RMQ over the triangle scene. Immutable and safe to share across threads.
template <typename Real>
class Solver {
 public:
  static Solver build(InputArray arr, const SolverOptions& options = {});

  /// Dispatches on the scene layout.
  RmqAnswer solve(const Query& q) const;
  /// One ray from (theta, l/n, r/n) along +X.
  RmqAnswer solve_single(const Query& q) const;
  RmqAnswer solve_block(const Query& q) const;
  BlockDecomposition decompose(const Query& q) const;

  const InputArray& array() const { return arr_; }
  const Scene<Real>& scene() const { return scene_; }
  const SolverOptions& options() const { return options_; }
  std::optional<BlockConfig> block_config() const;
  double build_ms() const { return build_ms_; }

 private:
  Solver(InputArray arr, Scene<Real> scene, const SolverOptions& options, double build_ms)
      : arr_(std::move(arr)), scene_(std::move(scene)), options_(options), build_ms_(build_ms) {}

  HitRecord<Real> cast(std::int64_t l_local, std::int64_t r_local, std::uint64_t unit, Cell cell) const;
  RmqAnswer element_answer(const HitRecord<Real>& hit, const Query& q) const;
  RmqAnswer element_ray(Index block, const Query& part) const;
  RmqAnswer block_ray(Index first_block, Index last_block) const;
  void check_payload(const HitRecord<Real>& hit, float value) const;

  InputArray arr_;
  Scene<Real> scene_;
  SolverOptions options_;
  double build_ms_ = 0.0;
};

struct BatchResult {
  std::vector<RmqAnswer> answers;
  double elapsed_ns = 0.0;
  double ns_per_rmq = 0.0;
};

/// Answers in input order for any thread count. Only the query loop is
/// timed. The error of the lowest failing query index is rethrown.
template <typename Real>
BatchResult solve_batch(const Solver<Real>& solver, const QueryBatch& batch, unsigned threads = 1);

}  // namespace rtrmq
