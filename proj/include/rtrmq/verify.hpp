// Copyright 2026 The rtrmq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rtrmq/core.hpp"
#include "rtrmq/engine.hpp"
#include "rtrmq/scene.hpp"

namespace rtrmq::verify {

struct SuiteResult {
  explicit SuiteResult(std::string suite = {}) : name(std::move(suite)) {}

  std::string name;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::string first_failure;

  bool passed() const { return failures == 0 && checks > 0; }
  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
};

// Exact point-in-region test for the corner triangle of `local` in cell
// (cell_x, cell_y) with unit 1/d, against the query point (l, r) of cell
// (qx, qy). Integer arithmetic only, scaled by d; the legs through the right
// angle are exclusive and the hypotenuse inclusive.
bool exact_covers(std::int64_t local, std::int64_t d, std::int64_t cell_x, std::int64_t cell_y, std::int64_t l,
                  std::int64_t r, std::int64_t qx, std::int64_t qy);

/// Random array of n values on a 2^-24 grid with `duplicate_rate` of the
/// positions overwritten by copies of other positions.
InputArray random_array(std::size_t n, double duplicate_rate, std::uint64_t seed);

/// Block sizes exercised for an array of n: a small odd size, ~sqrt(n), and
/// n/3 + 1 (three blocks with a short tail), filtered by the gate.
std::vector<std::uint64_t> sweep_block_sizes(std::size_t n);

struct SolverVariant {
  std::string name;
  SolverOptions options;
};

/// Single layout plus every sweep block size with both block-minimum
/// strategies (the lookup table only while it stays under `max_lookup_entries`).
std::vector<SolverVariant> solver_variants(std::size_t n, std::size_t max_lookup_entries = std::size_t{1} << 25);

SuiteResult check_oracles(int arrays, std::size_t max_n, std::uint64_t seed);
SuiteResult check_transform(std::int64_t exhaustive_limit, std::uint64_t random_pairs, std::int64_t random_max,
                            std::uint64_t seed);
SuiteResult check_gate_examples();
SuiteResult check_coverage(std::size_t max_n);
SuiteResult check_bvh(int scenes, int rays_per_scene, std::size_t max_triangles, std::uint64_t seed);

struct EngineSweep {
  std::vector<std::size_t> sizes;
  int arrays_per_size = 1;
  std::size_t all_pairs_limit = 1024;  // enumerate every (l, r) up to this n
  std::size_t sampled_queries = 10000;
  double duplicate_rate = 0.1;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

SuiteResult check_engine(const EngineSweep& sweep);
SuiteResult check_decomposition(const EngineSweep& sweep, std::int64_t fault_right_begin_offset = 0);
SuiteResult check_strategy_agreement(const EngineSweep& sweep);
/// 32-bit scene vs 64-bit scene: identical answer indices.
SuiteResult check_fp64_agreement(std::size_t n, std::size_t queries, std::uint64_t seed);
SuiteResult check_distributions(std::uint64_t n, std::size_t samples, std::uint64_t seed);
SuiteResult check_determinism(std::size_t n, std::size_t queries, std::uint64_t seed);

struct VerifyOptions {
  std::uint64_t seed = 1;
  bool fp64 = false;
  std::int64_t fault_right_begin_offset = 0;
  unsigned threads = 1;
};

/// Every suite at desk scale.
std::vector<SuiteResult> run_all(const VerifyOptions& options);

}  // namespace rtrmq::verify
