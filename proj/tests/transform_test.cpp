// Copyright 2026 The rtrmq Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "rtrmq/transform.hpp"
#include "rtrmq/verify.hpp"

namespace rtrmq {
namespace {

constexpr std::uint64_t pow2(int e) { return std::uint64_t{1} << e; }

TEST(IntToFloat, WorkedValues) {
  EXPECT_EQ(int_to_float(0), 0.5f);
  EXPECT_EQ(int_to_float(std::int64_t{1} << 23), 1.0f);
  EXPECT_EQ(int_to_float((std::int64_t{1} << 24) - 1), static_cast<float>((pow2(24) - 1) / double(pow2(24)) * 2));
  EXPECT_FLOAT_EQ(int_to_float((std::int64_t{1} << 24) - 1), 1.99999988f);
}

TEST(IntToFloat, DomainEnds) {
  EXPECT_THROW(int_to_float(-1), std::domain_error);
  EXPECT_THROW(int_to_float(kIntToFloatLimit), std::domain_error);
  EXPECT_TRUE(std::isfinite(int_to_float(kIntToFloatLimit - 1)));
  EXPECT_LT(int_to_float(kIntToFloatLimit - 2), int_to_float(kIntToFloatLimit - 1));
}

TEST(IntToFloat, StrictlyMonotone) {
  const verify::SuiteResult r = verify::check_transform(std::int64_t{1} << 16, 20000, std::int64_t{1} << 30, 3);
  EXPECT_TRUE(r.passed()) << r.first_failure;
}

TEST(PrecisionGate, WorkedExamples) {
  EXPECT_TRUE(precision_gate(pow2(26), pow2(12)));
  const GateReport eq = evaluate_gate(pow2(26), pow2(18));
  EXPECT_TRUE(eq.ok());
  EXPECT_EQ(eq.obtained, eq.needed);
  EXPECT_FALSE(precision_gate(pow2(34), pow2(18)));
  const GateReport fail = evaluate_gate(pow2(34), pow2(18));
  EXPECT_EQ(fail.exponent, 9);
  EXPECT_GT(fail.obtained, fail.needed);
}

TEST(PrecisionGate, HardLimits) {
  EXPECT_FALSE(precision_gate(pow2(20), pow2(19)));  // block size above 2^18
  EXPECT_FALSE(precision_gate(pow2(25) + 1, 1));     // more than 2^24 blocks
  EXPECT_TRUE(precision_gate(1, 1));
}

TEST(PrecisionGate, DescribeNamesBothSides) {
  const std::string text = evaluate_gate(pow2(34), pow2(18)).describe();
  EXPECT_NE(text.find("2^9 * 2^-23"), std::string::npos);
  EXPECT_NE(text.find(" > "), std::string::npos);
  EXPECT_NE(text.find("1/BS"), std::string::npos);
}

TEST(ChooseBlockSize, WorkedExamples) {
  const BlockConfig a = choose_block_size(pow2(20), pow2(10));
  EXPECT_EQ(a.block_size, pow2(10));
  EXPECT_EQ(a.num_blocks, pow2(10));
  EXPECT_EQ(a.grid_side, 33u);
  const BlockConfig b = choose_block_size(8, 4);
  EXPECT_EQ(b.block_size, 4u);
  EXPECT_EQ(b.num_blocks, 2u);
  EXPECT_EQ(b.grid_side, 2u);
  EXPECT_EQ(choose_block_size(pow2(26)).block_size, pow2(18));
}

TEST(ChooseBlockSize, FailingHintFallsBack) {
  const BlockConfig c = choose_block_size(pow2(20), pow2(19));
  EXPECT_TRUE(precision_gate(c.n, c.block_size));
  EXPECT_LE(c.block_size, pow2(18));
}

TEST(MakeBlockConfig, RejectsFailingGate) {
  EXPECT_THROW(make_block_config(pow2(34), pow2(18)), ConfigError);
  EXPECT_THROW(make_block_config(16, 0), ConfigError);
  const BlockConfig c = make_block_config(10, 3);
  EXPECT_EQ(c.num_blocks, 4u);
  EXPECT_GE(c.num_blocks * c.block_size, c.n);
}

TEST(CeilSqrt, SmallAndLarge) {
  EXPECT_EQ(ceil_sqrt(0), 0u);
  EXPECT_EQ(ceil_sqrt(1), 1u);
  EXPECT_EQ(ceil_sqrt(2), 2u);
  EXPECT_EQ(ceil_sqrt(1025), 33u);
  EXPECT_EQ(ceil_sqrt(pow2(40)), pow2(20));
  EXPECT_EQ(ceil_sqrt(pow2(40) + 1), pow2(20) + 1);
}

TEST(PrecisionGate, UlpOfGridBoundsCellUnit) {
  const verify::SuiteResult r = verify::check_gate_examples();
  EXPECT_TRUE(r.passed()) << r.first_failure;
}

}  // namespace
}  // namespace rtrmq
