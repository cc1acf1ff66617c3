// Copyright 2026 The rtrmq Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "rtrmq/core.hpp"
#include "rtrmq/transform.hpp"
#include "rtrmq/verify.hpp"

namespace rtrmq {
namespace {

TEST(InputArray, ThetaBelowMinimum) {
  const InputArray arr = InputArray::from_values({5, 3, 1, 9, 6, 2});
  EXPECT_EQ(arr.size(), 6u);
  EXPECT_EQ(arr.min_value(), 1.0f);
  EXPECT_EQ(arr.max_value(), 9.0f);
  EXPECT_EQ(arr.theta(), 0.0f);
}

TEST(InputArray, ThetaStaysBelowLargeMinimum) {
  const InputArray arr = InputArray::from_values({1e30f, 2e30f});
  EXPECT_LT(arr.theta(), 1e30f);
  const InputArray negative = InputArray::from_values({-3e20f});
  EXPECT_LT(negative.theta(), -3e20f);
}

TEST(InputArray, IntegersGoThroughTransformInOrder) {
  const std::vector<std::int64_t> raw{0, std::int64_t{1} << 23, (std::int64_t{1} << 24) - 1, 7};
  const InputArray arr = InputArray::from_integers(raw);
  ASSERT_TRUE(arr.raw().has_value());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    EXPECT_EQ(arr[i], int_to_float(raw[i]));
    EXPECT_EQ((*arr.raw())[i], raw[i]);
  }
}

TEST(InputArray, RejectsInvalidInput) {
  EXPECT_THROW(InputArray::from_values({}), std::invalid_argument);
  EXPECT_THROW(InputArray::from_values({1.0f, std::numeric_limits<float>::quiet_NaN()}), std::domain_error);
  EXPECT_THROW(InputArray::from_values({std::numeric_limits<float>::infinity()}), std::domain_error);
  EXPECT_THROW(InputArray::from_integers({-1}), std::domain_error);
}

TEST(ValidateQuery, Bounds) {
  EXPECT_NO_THROW(validate_query(3, {0, 2}));
  EXPECT_NO_THROW(validate_query(3, {1, 1}));
  EXPECT_THROW(validate_query(3, {2, 1}), std::out_of_range);
  EXPECT_THROW(validate_query(3, {0, 3}), std::out_of_range);
}

TEST(Exhaustive, WorkedExamples) {
  const InputArray x = InputArray::from_values({9, 2, 7, 8, 4, 1, 3});
  EXPECT_EQ(rmq_exhaustive(x, {2, 6}).index, 5u);
  const InputArray y = InputArray::from_values({5, 3, 1, 9, 6, 2});
  const RmqAnswer a = rmq_exhaustive(y, {3, 5});
  EXPECT_EQ(a.index, 5u);
  EXPECT_EQ(a.value, 2.0f);
  for (Index i = 0; i < y.size(); ++i) EXPECT_EQ(rmq_exhaustive(y, {i, i}).index, i);
}

TEST(Sparse, WorkedExamples) {
  const InputArray x = InputArray::from_values({9, 2, 7, 8, 4, 1, 3});
  EXPECT_EQ(SparseTable(x).query({2, 6}).index, 5u);
  const InputArray one = InputArray::from_values({4});
  EXPECT_EQ(SparseTable(one).query({0, 0}).index, 0u);
  const InputArray ties = InputArray::from_values({1, 1, 1});
  EXPECT_EQ(SparseTable(ties).query({0, 2}).index, 0u);
  EXPECT_EQ(SparseTable(ties).query({1, 2}).index, 1u);
  const InputArray y = InputArray::from_values({5, 3, 1, 9, 6, 2});
  EXPECT_EQ(rmq_sparse(build_sparse_table(y), {0, 5}), (RmqAnswer{2, 1.0f}));
}

TEST(Sparse, MatchesExhaustiveOnRandomArrays) {
  const verify::SuiteResult r = verify::check_oracles(1000, 64, 11);
  EXPECT_TRUE(r.passed()) << r.first_failure;
}

TEST(Better, LeftmostTieBreak) {
  EXPECT_TRUE(better({3, 1.0f}, {1, 2.0f}));
  EXPECT_TRUE(better({1, 1.0f}, {3, 1.0f}));
  EXPECT_FALSE(better({3, 1.0f}, {1, 1.0f}));
  EXPECT_FALSE(better({1, 1.0f}, {1, 1.0f}));
}

TEST(Distribution, NamesRoundTrip) {
  for (const Distribution d : {Distribution::kLarge, Distribution::kMedium, Distribution::kSmall}) {
    EXPECT_EQ(parse_distribution(to_string(d)), d);
  }
  EXPECT_THROW(parse_distribution("huge"), std::invalid_argument);
}

}  // namespace
}  // namespace rtrmq
