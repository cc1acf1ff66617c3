// Copyright 2026 The rtrmq Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "rtrmq/bench.hpp"
#include "rtrmq/verify.hpp"

namespace rtrmq {
namespace {

TEST(Rng, ReferenceSequenceIsStable) {
  // splitmix64 reference outputs for state 0.
  std::uint64_t state = 0;
  EXPECT_EQ(splitmix64(state), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(splitmix64(state), 0x6e789e6aa1b965f4ULL);
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
}

TEST(Rng, BelowStaysInRangeAndCoversIt) {
  Rng rng(1);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const std::uint64_t v = rng.below(7);
    ASSERT_LT(v, 7u);
    ++hits[v];
  }
  for (const int h : hits) EXPECT_GT(h, 800);
  EXPECT_EQ(rng.below(1), 0u);
}

TEST(Rng, NormalMoments) {
  Rng rng(5);
  double sum = 0;
  double sq = 0;
  const int count = 200000;
  for (int i = 0; i < count; ++i) {
    const double x = rng.normal();
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(sum / count, 0.0, 0.01);
  EXPECT_NEAR(sq / count, 1.0, 0.02);
}

TEST(Distributions, Parameters) {
  const DistributionSpec m = DistributionSpec::medium(std::uint64_t{1} << 26);
  EXPECT_DOUBLE_EQ(m.mu, 0.6 * std::log(std::pow(2.0, 26)));
  EXPECT_DOUBLE_EQ(m.sigma, 0.3);
  const DistributionSpec s = DistributionSpec::small(std::uint64_t{1} << 26);
  EXPECT_DOUBLE_EQ(s.mu, 0.3 * std::log(std::pow(2.0, 26)));
  EXPECT_NEAR(std::log2(m.analytic_mean_length()), 15.7, 0.05);
  EXPECT_NEAR(std::log2(s.analytic_mean_length()), 7.9, 0.05);
  EXPECT_EQ(DistributionSpec::fixed(1024, -3).label(), "y=-3");
  EXPECT_EQ(DistributionSpec::fixed(1024, -3).analytic_mean_length(), 128.0);
  EXPECT_EQ(DistributionSpec::fixed(4, -10).analytic_mean_length(), 1.0);
}

TEST(Distributions, MeansMatchTargets) {
  const verify::SuiteResult big = verify::check_distributions(std::uint64_t{1} << 26, 100000, 9);
  EXPECT_TRUE(big.passed()) << big.first_failure;
  const verify::SuiteResult mid = verify::check_distributions(std::uint64_t{1} << 20, 100000, 10);
  EXPECT_TRUE(mid.passed()) << mid.first_failure;
}

TEST(Distributions, SmallArraysClampLengths) {
  for (const Distribution kind : {Distribution::kLarge, Distribution::kMedium, Distribution::kSmall}) {
    for (const std::uint64_t n : {1u, 2u, 5u}) {
      const QueryBatch b = gen_queries(DistributionSpec::make(kind, n), 500, 3);
      for (const Query& q : b.queries) {
        ASSERT_LE(q.l, q.r);
        ASSERT_LT(q.r, n);
      }
    }
  }
  EXPECT_THROW(gen_queries(DistributionSpec::large(10), 0, 1), std::invalid_argument);
}

TEST(Distributions, PositionsAreUniformGivenLength) {
  const std::uint64_t n = 100;
  const QueryBatch b = gen_queries(DistributionSpec::fixed(n, -1), 50000, 4);
  std::vector<int> starts(n, 0);
  for (const Query& q : b.queries) {
    ASSERT_EQ(q.length(), 50u);
    ++starts[q.l];
  }
  for (std::uint64_t l = 0; l <= 50; ++l) EXPECT_GT(starts[l], 700) << l;
  for (std::uint64_t l = 51; l < n; ++l) EXPECT_EQ(starts[l], 0) << l;
}

TEST(UniformValues, OnGridAndDeterministic) {
  const auto a = gen_uniform_values(1000, 3);
  EXPECT_EQ(a, gen_uniform_values(1000, 3));
  for (const float v : a) {
    ASSERT_GE(v, 0.0f);
    ASSERT_LT(v, 1.0f);
    ASSERT_EQ(v * 16777216.0f, std::floor(v * 16777216.0f));
  }
}

TEST(Algorithm, NamesRoundTrip) {
  for (const Algorithm a : {Algorithm::kRaycast, Algorithm::kExhaustive, Algorithm::kSparse}) {
    EXPECT_EQ(parse_algorithm(to_string(a)), a);
  }
  EXPECT_THROW(parse_algorithm("lca"), std::invalid_argument);
}

BenchConfig small_bench(Algorithm algo) {
  BenchConfig c;
  c.algo = algo;
  c.n = 1 << 14;
  c.batch = 2000;
  c.spec = DistributionSpec::medium(c.n);
  c.seed = 12;
  return c;
}

TEST(RunBench, SparseAuditsAgainstScan) {
  const BenchRecord r = run_bench(small_bench(Algorithm::kSparse));
  EXPECT_EQ(r.status, "ok");
  EXPECT_GT(r.ns_per_rmq, 0.0);
  EXPECT_EQ(r.audited, 20u);
  EXPECT_FALSE(r.block_size.has_value());
}

TEST(RunBench, AllAlgorithmsGiveSameAnswers) {
  const std::uint64_t sparse = run_bench(small_bench(Algorithm::kSparse)).answer_digest;
  EXPECT_EQ(run_bench(small_bench(Algorithm::kExhaustive)).answer_digest, sparse);
  const BenchRecord ray = run_bench(small_bench(Algorithm::kRaycast));
  EXPECT_EQ(ray.answer_digest, sparse);
  EXPECT_TRUE(ray.block_size.has_value());
}

TEST(RunBench, RepsChangeOnlyTiming) {
  BenchConfig c = small_bench(Algorithm::kRaycast);
  c.realizations = 2;
  BenchRecord one = run_bench(c);
  c.reps = 32;
  BenchRecord many = run_bench(c);
  EXPECT_EQ(one.answer_digest, many.answer_digest);
  EXPECT_EQ(many.reps, 32u);
  one.reps = many.reps;
  one.ns_per_rmq = many.ns_per_rmq = 0;
  one.total_ms = many.total_ms = 0;
  EXPECT_EQ(format_csv_row(one), format_csv_row(many));
}

TEST(RunBench, InvalidConfigRejected) {
  BenchConfig c = small_bench(Algorithm::kRaycast);
  c.forced_block_size = std::uint64_t{1} << 19;
  EXPECT_THROW(run_bench(c), ConfigError);
  c = small_bench(Algorithm::kSparse);
  c.reps = 0;
  EXPECT_THROW(run_bench(c), ConfigError);
  c = small_bench(Algorithm::kSparse);
  c.spec = DistributionSpec::large(5);
  EXPECT_THROW(run_bench(c), ConfigError);
}

TEST(Heatmap, SparseGridRowCount) {
  HeatmapConfig h;
  for (int e = 10; e <= 20; ++e) h.n_values.push_back(std::uint64_t{1} << e);
  h.algos = {Algorithm::kSparse};
  h.batch = 64;
  const std::vector<BenchRecord> rows = heatmap_sweep(h);
  EXPECT_EQ(rows.size(), 11u * 10u);
  for (const BenchRecord& r : rows) EXPECT_EQ(r.status, "ok");
}

TEST(Heatmap, RaycastPicksFastestBlockSize) {
  HeatmapConfig h;
  h.n_values = {4096};
  h.y_min = -2;
  h.y_max = -2;
  h.algos = {Algorithm::kRaycast};
  h.batch = 256;
  const std::vector<BenchRecord> rows = heatmap_sweep(h);
  ASSERT_EQ(rows.size(), block_size_candidates(4096, {}).size() + 1);
  const BenchRecord& best = rows.back();
  EXPECT_EQ(best.algo, "raycast-best");
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) EXPECT_LE(best.ns_per_rmq, rows[i].ns_per_rmq);
}

TEST(Heatmap, FailingCellsAreRecorded) {
  HeatmapConfig h;
  h.n_values = {1024};
  h.y_min = -1;
  h.y_max = -1;
  h.algos = {Algorithm::kRaycast};
  h.batch = 16;
  h.block_sizes = {std::uint64_t{1} << 20, 32};
  const std::vector<BenchRecord> rows = heatmap_sweep(h);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].status.rfind("error:", 0), 0u);
  EXPECT_EQ(rows[1].status, "ok");
  EXPECT_EQ(rows[2].algo, "raycast-best");
  EXPECT_EQ(rows[2].block_size, std::optional<std::uint64_t>{32});
}

TEST(Csv, HeaderAndRoundTrip) {
  HeatmapConfig h;
  h.n_values = {1024, 2048};
  h.y_min = -3;
  h.algos = {Algorithm::kSparse, Algorithm::kRaycast};
  h.batch = 32;
  const std::vector<BenchRecord> rows = heatmap_sweep(h);
  std::stringstream ss;
  write_csv(ss, rows);
  std::string header;
  std::getline(std::stringstream(ss.str()), header);
  EXPECT_EQ(header, kCsvHeader);
  const std::vector<BenchRecord> back = read_csv(ss);
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(format_csv_row(back[i]), format_csv_row(rows[i]));
}

TEST(Csv, RejectsWrongSchema) {
  std::stringstream bad("n,q\n1,2\n");
  EXPECT_THROW(read_csv(bad), std::runtime_error);
  std::stringstream short_row(std::string(kCsvHeader) + "\n1,2,3\n");
  EXPECT_THROW(read_csv(short_row), std::runtime_error);
}

TEST(Csv, EmptyBlockSizeForNonBlockAlgorithms) {
  BenchRecord r;
  r.n = 8;
  r.q = 2;
  r.dist = "large";
  r.algo = "sparse";
  r.ns_per_rmq = 12.3456789;
  r.total_ms = 0.5;
  r.reps = 1;
  r.realizations = 1;
  EXPECT_EQ(format_csv_row(r), "8,2,large,sparse,,12.3457,0.5,1,1,0,ok");
}

}  // namespace
}  // namespace rtrmq
