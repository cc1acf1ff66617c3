// Copyright 2026 The rtrmq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace rtrmq {

/// Largest integer accepted by int_to_float. The exponent floor(x / 2^23)
/// must stay <= 128 for q * 2^E to remain a finite binary32.
inline constexpr std::int64_t kIntToFloatLimit = std::int64_t{129} << 23;

/// Order-preserving map from non-negative integers to binary32:
/// E = x / 2^23, M = x mod 2^23, result = (M + 2^23) / 2^24 * 2^E.
/// Strictly increasing and exact. Throws std::domain_error outside
/// [0, kIntToFloatLimit).
float int_to_float(std::int64_t x);

inline constexpr std::uint64_t kMaxBlockSize = std::uint64_t{1} << 18;
inline constexpr std::uint64_t kMaxBlocks = std::uint64_t{1} << 24;
inline constexpr std::uint64_t kMaxSingleLayout = std::uint64_t{1} << 24;

/// Both sides of the block-matrix precision inequality
///   2^floor(log2(2 * ceil(sqrt(n / BS)))) * 2^-23 <= 1 / BS
/// evaluated exactly, plus the hard size limits.
struct GateReport {
  std::uint64_t n = 0;
  std::uint64_t block_size = 0;
  std::uint64_t num_blocks = 0;
  std::uint64_t side = 0;       // ceil(sqrt(n / BS))
  int exponent = 0;             // floor(log2(2 * side))
  double obtained = 0.0;        // 2^exponent * 2^-23
  double needed = 0.0;          // 1 / BS
  bool inequality = false;
  bool within_limits = false;

  bool ok() const { return inequality && within_limits; }
  std::string describe() const;
};

GateReport evaluate_gate(std::uint64_t n, std::uint64_t block_size);

inline bool precision_gate(std::uint64_t n, std::uint64_t block_size) {
  return evaluate_gate(n, block_size).ok();
}

struct BlockConfig {
  std::uint64_t n = 0;
  std::uint64_t block_size = 0;
  std::uint64_t num_blocks = 0;
  std::uint64_t grid_side = 0;  // ceil(sqrt(num_blocks + 1)); cell 0 holds the block minimums

  friend bool operator==(const BlockConfig&, const BlockConfig&) = default;
};

/// Builds the config for an explicit block size. Throws ConfigError with the
/// evaluated inequality when the gate fails.
BlockConfig make_block_config(std::uint64_t n, std::uint64_t block_size);

/// Uses the hint when it passes the gate, otherwise the largest power of two
/// <= 2^18 that does.
BlockConfig choose_block_size(std::uint64_t n, std::optional<std::uint64_t> hint = std::nullopt);

/// Smallest s with s * s >= v.
std::uint64_t ceil_sqrt(std::uint64_t v);

}  // namespace rtrmq
