// Copyright 2026 The Geodabs Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "geodabs/normalize.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "geodabs/baseline.h"

namespace geodabs {
namespace {

TEST(Normalize, SingleCellCollapses) {
  const Cell c = geohash_decode(geohash_encode({51.5, -0.12}, 36));
  const double dlat = (c.lat_max - c.lat_min) / 10.0, dlon = (c.lon_max - c.lon_min) / 10.0;
  Trajectory s{1, {}};
  for (int i = 1; i < 9; ++i) s.points.push_back({c.lat_min + i * dlat, c.lon_min + i * dlon});
  const auto n = normalize(s, 36);
  ASSERT_EQ(n.size(), 1u);
  EXPECT_EQ(n.points[0], c.center());
}

TEST(Normalize, KeepsNonConsecutiveDuplicates) {
  // Depth 2 cells: lon < 0 -> "0x", lon >= 0 -> "1x".
  const Trajectory s{2, {{10, -10}, {10, 10}, {10, -10}}};
  const auto n = normalize(s, 2);
  ASSERT_EQ(n.size(), 3u);
  EXPECT_EQ(n.cells[0], n.cells[2]);
  EXPECT_NE(n.cells[0], n.cells[1]);
}

TEST(Normalize, TwoCellsWithCenters) {
  // At depth 2, (10,-10) is "01" (lon [-180,0), lat [0,90)); (10,10) is "11".
  const Trajectory s{3, {{10, -10}, {10, 10}}};
  const auto n = normalize(s, 2);
  ASSERT_EQ(n.size(), 2u);
  EXPECT_EQ(n.cells[0], (Geohash{0b01, 2}));
  EXPECT_EQ(n.cells[1], (Geohash{0b11, 2}));
  EXPECT_EQ(n.points[0], (Point{45, -90}));
  EXPECT_EQ(n.points[1], (Point{45, 90}));
  EXPECT_EQ(n.source, (std::vector<std::size_t>{0, 1}));
}

TEST(Normalize, Errors) {
  EXPECT_THROW(normalize(Trajectory{1, {}}, 36), std::invalid_argument);
  EXPECT_THROW(normalize(Trajectory{1, {{0, 0}}}, 0), std::invalid_argument);
  EXPECT_THROW(normalize(Trajectory{1, {{0, 0}}}, 37), std::invalid_argument);
}

class NormalizeProperties : public ::testing::TestWithParam<int> {};

TEST_P(NormalizeProperties, IdempotentReversibleAndFaithful) {
  const int depth = GetParam();
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Trajectory s = random_walk(200, seed);
    const auto n = normalize(s, depth);
    ASSERT_LE(n.size(), s.points.size());
    for (std::size_t i = 1; i < n.size(); ++i) ASSERT_NE(n.cells[i - 1], n.cells[i]);
    for (std::size_t i = 0; i < n.size(); ++i) {
      ASSERT_EQ(n.cells[i].depth, depth);
      ASSERT_TRUE(geohash_decode(n.cells[i]).contains(s.points[n.source[i]]));
      ASSERT_EQ(n.points[i], geohash_decode(n.cells[i]).center());
    }
    EXPECT_EQ(normalize(n.as_trajectory(), depth).cells, n.cells);

    Trajectory r = s;
    std::reverse(r.points.begin(), r.points.end());
    auto rn = normalize(r, depth).cells;
    std::reverse(rn.begin(), rn.end());
    EXPECT_EQ(rn, n.cells);
  }
}

INSTANTIATE_TEST_SUITE_P(Depths, NormalizeProperties, ::testing::Values(20, 28, 32, 36));

TEST(MetricLength, SumsSegments) {
  const std::vector<Point> pts{{0, 0}, {0, 1}, {0, 2}};
  EXPECT_NEAR(metric_length(pts), 2 * 111194.92664455873, 1e-3);
  EXPECT_EQ(metric_length(std::vector<Point>{{0, 0}}), 0.0);
}

}  // namespace
}  // namespace geodabs
