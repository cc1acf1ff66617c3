// Copyright 2026 The rtrmq Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <set>
#include <utility>

#include "rtrmq/geometry.hpp"
#include "rtrmq/verify.hpp"

namespace rtrmq {
namespace {

using Vf = Vec3<float>;

TEST(GenTriangle, WorkedExample) {
  const InputArray arr = InputArray::from_values({5, 3, 1, 9, 6, 2});
  const Triangle<float> t = gen_triangle<float>(arr, 2);
  EXPECT_EQ(t.v0, (Vf{1.0f, 0.5f, 1.0f / 6.0f}));
  EXPECT_EQ(t.v1, (Vf{1.0f, 0.5f, 2.0f}));
  EXPECT_EQ(t.v2, (Vf{1.0f, -1.0f, 1.0f / 6.0f}));
  EXPECT_EQ(t.primitive_id, 2u);
}

TEST(GenTriangle, SingleElement) {
  const InputArray arr = InputArray::from_values({4.5f});
  const Triangle<float> t = gen_triangle<float>(arr, 0);
  EXPECT_EQ(t.v0, (Vf{4.5f, 1.0f, -1.0f}));
  EXPECT_EQ(t.v1, (Vf{4.5f, 1.0f, 2.0f}));
  EXPECT_EQ(t.v2, (Vf{4.5f, -1.0f, -1.0f}));
}

TEST(GenTriangle, ShapeAndRangeInvariants) {
  const InputArray arr = verify::random_array(97, 0.2, 4);
  for (Index i = 0; i < arr.size(); ++i) {
    const Triangle<double> t = gen_triangle<double>(arr, i);
    EXPECT_EQ(t.v0.x, t.v1.x);
    EXPECT_EQ(t.v1.x, t.v2.x);
    EXPECT_EQ(t.v1.y, t.v0.y);
    EXPECT_EQ(t.v2.z, t.v0.z);
    for (const auto& v : {t.v0, t.v1, t.v2}) {
      EXPECT_GE(v.y, -1.0);
      EXPECT_LE(v.y, 2.0);
      EXPECT_GE(v.z, -1.0);
      EXPECT_LE(v.z, 2.0);
    }
  }
}

TEST(GenTriangleBlock, WorkedExamples) {
  std::vector<float> values(8);
  for (int i = 0; i < 8; ++i) values[i] = static_cast<float>(10 + i);
  const InputArray arr = InputArray::from_values(values);
  const BlockConfig cfg = make_block_config(8, 4);
  ASSERT_EQ(cfg.grid_side, 2u);

  const CellLayout layout(cfg);
  EXPECT_EQ(layout.cell_of_block(1), (Cell{0, 1}));
  const Triangle<float> t5 = gen_triangle_block<float>(arr, 5, cfg);
  EXPECT_EQ(t5.v0, (Vf{15.0f, 0.5f, 2.0f}));
  EXPECT_EQ(t5.v1, (Vf{15.0f, 0.5f, 4.0f}));
  EXPECT_EQ(t5.v2, (Vf{15.0f, -1.0f, 2.0f}));

  EXPECT_EQ(layout.cell_of_block(0), (Cell{1, 0}));
  const Triangle<float> t0 = gen_triangle_block<float>(arr, 0, cfg);
  EXPECT_EQ(t0.v0, (Vf{10.0f, 2.25f, -0.25f}));
  EXPECT_EQ(t0.v1, (Vf{10.0f, 2.25f, 2.0f}));
  EXPECT_EQ(t0.v2, (Vf{10.0f, 1.0f, -0.25f}));
}

TEST(GenTriangleBlock, LocalCoordinatesStayInCell) {
  const InputArray arr = verify::random_array(1000, 0.0, 9);
  const BlockConfig cfg = make_block_config(1000, 37);
  const CellLayout layout(cfg);
  for (Index i = 0; i < arr.size(); ++i) {
    const Triangle<double> t = gen_triangle_block<double>(arr, i, cfg);
    const Cell c = layout.cell_of_block(i / 37);
    EXPECT_NE(c, (Cell{0, 0}));
    for (const auto& v : {t.v0, t.v1, t.v2}) {
      EXPECT_GE(v.y - 2.0 * c.x, -1.0);
      EXPECT_LE(v.y - 2.0 * c.x, 2.0);
      EXPECT_GE(v.z - 2.0 * c.y, -1.0);
      EXPECT_LE(v.z - 2.0 * c.y, 2.0);
    }
  }
}

TEST(CellLayout, CellsAreDistinctAndQueryBoxesDisjoint) {
  for (const std::uint64_t bs : {1u, 3u, 16u}) {
    const BlockConfig cfg = make_block_config(200, bs);
    const CellLayout layout(cfg);
    std::set<std::pair<std::uint64_t, std::uint64_t>> seen{{0, 0}};
    for (std::uint64_t b = 0; b < cfg.num_blocks; ++b) {
      const Cell c = layout.cell_of_block(b);
      EXPECT_LT(c.x, cfg.grid_side);
      EXPECT_LT(c.y, cfg.grid_side);
      EXPECT_TRUE(seen.insert({c.x, c.y}).second) << "block " << b;
    }
    // Query points of a cell live in [2c, 2c + (u - 1) / u], so distinct cells never share one.
    const double span = static_cast<double>(layout.local_unit() - 1) / static_cast<double>(layout.local_unit());
    EXPECT_LT(span, 2.0);
  }
}

TEST(CellLayout, LinearDebugGrid) {
  const BlockConfig cfg = make_block_config(16, 4);
  const CellLayout layout(cfg, GridMode::kLinear);
  EXPECT_EQ(layout.local_unit(), 4u);
  EXPECT_EQ(layout.cell_of_block(0), (Cell{1, 0}));
  EXPECT_EQ(layout.cell_of_block(3), (Cell{0, 1}));
}

TEST(Coverage, PointInRegionMatchesRange) {
  const verify::SuiteResult r = verify::check_coverage(20);
  EXPECT_TRUE(r.passed()) << r.first_failure;
}

TEST(ExactCovers, HalfOpenLegs) {
  // Triangle i=2 of n=6: a query with l = 3 lies on its L leg and is outside.
  EXPECT_TRUE(verify::exact_covers(2, 6, 0, 0, 2, 2, 0, 0));
  EXPECT_FALSE(verify::exact_covers(2, 6, 0, 0, 3, 5, 0, 0));
  EXPECT_FALSE(verify::exact_covers(2, 6, 0, 0, 0, 1, 0, 0));
  EXPECT_TRUE(verify::exact_covers(2, 6, 0, 0, 0, 5, 0, 0));
}

TEST(BlockMinimums, WorkedExamples) {
  const InputArray arr = InputArray::from_values({5, 3, 1, 9, 6, 2});
  const BlockMinimums m = compute_block_minimums(arr, make_block_config(6, 3));
  EXPECT_EQ(m.values, (std::vector<float>{1, 2}));
  EXPECT_EQ(m.argmin, (std::vector<Index>{2, 5}));

  const BlockMinimums whole = compute_block_minimums(arr, make_block_config(6, 8));
  EXPECT_EQ(whole.values, (std::vector<float>{1}));
  EXPECT_EQ(whole.argmin, (std::vector<Index>{2}));

  const InputArray seven = InputArray::from_values({7});
  const BlockMinimums single = compute_block_minimums(seven, make_block_config(1, 4));
  EXPECT_EQ(single.values, (std::vector<float>{7}));
  EXPECT_EQ(single.argmin, (std::vector<Index>{0}));
}

TEST(BlockMinimums, LeftmostTie) {
  const InputArray arr = InputArray::from_values({2, 1, 1, 1, 0, 0});
  const BlockMinimums m = compute_block_minimums(arr, make_block_config(6, 3));
  EXPECT_EQ(m.argmin, (std::vector<Index>{1, 4}));
}

}  // namespace
}  // namespace rtrmq
