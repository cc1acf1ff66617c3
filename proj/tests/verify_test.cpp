// Copyright 2026 The rtrmq Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>

#include "rtrmq/verify.hpp"

namespace rtrmq::verify {
namespace {

TEST(Verify, SweepBlockSizesPassTheGate) {
  for (const std::size_t n : {1u, 6u, 256u, 1024u, 65536u}) {
    const auto sizes = sweep_block_sizes(n);
    EXPECT_FALSE(sizes.empty());
    for (const auto bs : sizes) EXPECT_TRUE(precision_gate(n, bs));
  }
  EXPECT_EQ(sweep_block_sizes(1024).size(), 3u);
}

TEST(Verify, VariantsCoverLayoutsAndStrategies) {
  const auto variants = solver_variants(256);
  ASSERT_EQ(variants.size(), 7u);
  EXPECT_EQ(variants[0].options.layout, Layout::kSingle);
  int lookup = 0;
  for (const auto& v : variants) lookup += v.options.blockmin == BlockMinStrategy::kLookupTable;
  EXPECT_EQ(lookup, 3);
}

TEST(Verify, RandomArrayHasRequestedDuplicates) {
  const InputArray arr = random_array(10000, 0.1, 3);
  std::vector<float> v(arr.values().begin(), arr.values().end());
  std::sort(v.begin(), v.end());
  const auto distinct = static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
  EXPECT_LT(distinct, 9500u);
  EXPECT_GT(distinct, 8000u);
}

TEST(Verify, RunAllPassesAndFaultIsCaught) {
  VerifyOptions options;
  for (const SuiteResult& s : run_all(options)) EXPECT_TRUE(s.passed()) << s.name << ": " << s.first_failure;
  options.fault_right_begin_offset = 1;
  bool decomposition_failed = false;
  for (const SuiteResult& s : run_all(options)) {
    if (s.name == "block decomposition") decomposition_failed = !s.passed();
  }
  EXPECT_TRUE(decomposition_failed);
}

}  // namespace
}  // namespace rtrmq::verify
