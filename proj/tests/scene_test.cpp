// Copyright 2026 The rtrmq Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <sstream>

#include "rtrmq/scene.hpp"
#include "rtrmq/verify.hpp"

namespace rtrmq {
namespace {

InputArray eight() { return InputArray::from_values({4, 8, 1, 6, 7, 3, 2, 5}); }

TEST(Scene, SingleLayoutHasOneTrianglePerElement) {
  const Scene<float> s = build_scene<float>(InputArray::from_values({5, 3, 1, 9, 6, 2}), {});
  EXPECT_EQ(s.layout(), Layout::kSingle);
  EXPECT_EQ(s.triangles().size(), 6u);
  EXPECT_FALSE(s.cells().has_value());
}

TEST(Scene, BlockGeometryAddsBlockMinimumTriangles) {
  SceneOptions o;
  o.blocks = make_block_config(8, 4);
  const Scene<float> s = build_scene<float>(eight(), o);
  EXPECT_EQ(s.layout(), Layout::kBlockMatrix);
  ASSERT_EQ(s.triangles().size(), 8u + 2u);
  EXPECT_EQ(s.block_minimums().values, (std::vector<float>{1, 2}));
  EXPECT_EQ(s.block_minimums().argmin, (std::vector<Index>{2, 6}));
  // Block-minimum triangles sit in cell 0 with unit 1/B and ids equal to the block index.
  EXPECT_EQ(s.triangles()[8].primitive_id, 0u);
  EXPECT_EQ(s.triangles()[9].primitive_id, 1u);
  EXPECT_EQ(s.triangles()[9].v0, (Vec3<float>{2.0f, 1.0f, 0.0f}));
  EXPECT_FALSE(s.lookup_table().has_value());
}

TEST(Scene, LookupTableReplacesBlockTriangles) {
  SceneOptions o;
  o.blocks = make_block_config(8, 4);
  o.blockmin = BlockMinStrategy::kLookupTable;
  const Scene<float> s = build_scene<float>(eight(), o);
  EXPECT_EQ(s.triangles().size(), 8u);
  ASSERT_TRUE(s.lookup_table().has_value());
  const BlockLookupTable& table = *s.lookup_table();
  EXPECT_EQ(table.num_blocks(), 2u);
  EXPECT_EQ(table.argmin(0, 0), 0u);
  EXPECT_EQ(table.argmin(1, 1), 1u);
  EXPECT_EQ(table.argmin(0, 1), 0u);
}

TEST(BlockLookupTable, MatchesScanWithLeftmostTies) {
  const std::vector<float> mins{3, 1, 4, 1, 5, 9, 2, 6, 1};
  const BlockLookupTable table(mins);
  EXPECT_EQ(table.entries(), mins.size() * (mins.size() + 1) / 2);
  for (Index a = 0; a < mins.size(); ++a) {
    for (Index b = a; b < mins.size(); ++b) {
      Index want = a;
      for (Index k = a; k <= b; ++k) {
        if (mins[k] < mins[want]) want = k;
      }
      EXPECT_EQ(table.argmin(a, b), want) << a << "," << b;
    }
  }
}

TEST(Scene, RejectsMismatchedOrFailingConfig) {
  SceneOptions o;
  o.blocks = make_block_config(9, 4);
  EXPECT_THROW(build_scene<float>(eight(), o), ConfigError);
  BlockConfig forged{8, std::uint64_t{1} << 19, 1, 1};
  o.blocks = forged;
  EXPECT_THROW(build_scene<float>(eight(), o), ConfigError);
}

TEST(Scene, LinearGridNeedsRoomForBlocks) {
  SceneOptions o;
  o.blocks = make_block_config(16, 4);
  o.grid = GridMode::kLinear;
  EXPECT_NO_THROW(build_scene<float>(InputArray::from_values(std::vector<float>(16, 1.0f)), o));
  o.blocks = make_block_config(16, 8);
  EXPECT_THROW(build_scene<float>(InputArray::from_values(std::vector<float>(16, 1.0f)), o), ConfigError);
}

TEST(Scene, DumpWritesOneLinePerTriangle) {
  SceneOptions o;
  o.blocks = make_block_config(8, 4);
  const Scene<double> s = build_scene<double>(eight(), o);
  std::ostringstream os;
  s.dump(os);
  std::istringstream in(os.str());
  std::size_t lines = 0;
  for (std::string line; std::getline(in, line);) {
    std::istringstream fields(line);
    std::vector<double> v;
    for (double x; fields >> x;) v.push_back(x);
    EXPECT_EQ(v.size(), 10u);
    ++lines;
  }
  EXPECT_EQ(lines, s.triangles().size());
}

}  // namespace
}  // namespace rtrmq
