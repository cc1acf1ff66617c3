// Copyright 2026 The rtrmq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rtrmq/core.hpp"
#include "rtrmq/scene.hpp"

namespace rtrmq {

/// xoshiro256** seeded through splitmix64. Fixed so that query batches are
/// reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  /// Uniform in [0, bound), bound >= 1 (Lemire's multiply-shift with rejection).
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via Box-Muller (one value per call).
  double normal();

 private:
  std::uint64_t s_[4];
};

std::uint64_t splitmix64(std::uint64_t& state);

struct DistributionSpec {
  Distribution kind = Distribution::kLarge;
  std::uint64_t n = 1;
  double mu = 0.0;      // log-normal location (natural log)
  double sigma = 0.3;   // log-normal scale
  int exponent = -1;    // kFixed: length = max(1, floor(n * 2^exponent))

  static DistributionSpec large(std::uint64_t n);
  static DistributionSpec medium(std::uint64_t n);
  static DistributionSpec small(std::uint64_t n);
  static DistributionSpec fixed(std::uint64_t n, int exponent);
  static DistributionSpec make(Distribution kind, std::uint64_t n);

  /// Expected range length before rounding and clamping: (n+1)/2 for large,
  /// e^(mu + sigma^2/2) for the log-normal kinds, the fixed length otherwise.
  double analytic_mean_length() const;
  /// CSV label: "large", "medium", "small", or "y=<exponent>".
  std::string label() const;
};

std::uint64_t draw_length(const DistributionSpec& spec, Rng& rng);

/// Lengths per kind, then l uniform in [0, n - s], r = l + s - 1.
QueryBatch gen_queries(const DistributionSpec& spec, std::size_t count, std::uint64_t seed);

/// n floats uniform on the 2^-24 grid of [0, 1).
std::vector<float> gen_uniform_values(std::size_t n, std::uint64_t seed);

enum class Algorithm { kRaycast, kExhaustive, kSparse };

std::string to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& s);

struct BenchConfig {
  Algorithm algo = Algorithm::kRaycast;
  std::uint64_t n = 1;
  std::size_t batch = 1;
  DistributionSpec spec;
  unsigned reps = 1;
  unsigned realizations = 1;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  Layout layout = Layout::kBlockMatrix;
  std::optional<std::uint64_t> block_size_hint;
  std::optional<std::uint64_t> forced_block_size;
  BlockMinStrategy blockmin = BlockMinStrategy::kGeometry;
};

struct BenchRecord {
  std::uint64_t n = 0;
  std::uint64_t q = 0;
  std::string dist;
  std::string algo;
  std::optional<std::uint64_t> block_size;
  double ns_per_rmq = 0.0;
  double total_ms = 0.0;
  unsigned reps = 0;
  unsigned realizations = 0;
  std::uint64_t seed = 0;
  std::string status = "ok";

  // Not part of the CSV schema.
  double ns_stddev = 0.0;      // across realizations
  double build_ms = 0.0;       // preprocessing, excluded from ns_per_rmq
  std::uint64_t answer_digest = 0;
  std::uint64_t audited = 0;
};

/// Regenerates the array per realization and reuses it across reps. The
/// configuration is resolved before any timing; ConfigError propagates.
BenchRecord run_bench(const BenchConfig& config);

struct HeatmapConfig {
  std::vector<std::uint64_t> n_values;
  int y_min = -10;
  int y_max = -1;
  std::vector<Algorithm> algos;
  std::size_t batch = 4096;
  unsigned reps = 1;
  unsigned realizations = 1;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  /// Raycast block sizes to sweep; empty picks powers of four up to min(n, 2^18).
  std::vector<std::uint64_t> block_sizes;
};

/// Candidate block sizes for one n (explicit list filtered by the gate, or the default sweep).
std::vector<std::uint64_t> block_size_candidates(std::uint64_t n, const std::vector<std::uint64_t>& explicit_sizes);

/// One row per (n, y, algo[, block size]); raycast cells also get a
/// `raycast-best` row copying the fastest block size. Failing cells are
/// recorded with an `error:` status and the sweep continues.
std::vector<BenchRecord> heatmap_sweep(const HeatmapConfig& config);

inline constexpr const char* kCsvHeader = "n,q,dist,algo,block_size,ns_per_rmq,total_ms,reps,realizations,seed,status";

std::string format_csv_row(const BenchRecord& record);
void write_csv(std::ostream& os, const std::vector<BenchRecord>& records);
/// Parses a CSV produced by write_csv. Throws std::runtime_error on schema mismatch.
std::vector<BenchRecord> read_csv(std::istream& is);

}  // namespace rtrmq
