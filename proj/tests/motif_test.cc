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

#include "geodabs/motif.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "geodabs/baseline.h"
#include "geodabs/datagen.h"

namespace geodabs {
namespace {

FingerprintSequence sequence(std::vector<std::uint32_t> values) {
  FingerprintSequence s;
  for (std::size_t i = 0; i < values.size(); ++i) s.records.push_back({Geodab{values[i]}, i * 2});
  return s;
}

TEST(Density, DirectRatio) {
  InvertedIndex index{FingerprintParams{}};
  PreparedTrajectory p;
  p.id = 1;
  p.set = FingerprintSet{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  p.meta = {100, 80, 10, 5000.0};
  index.insert(p);
  EXPECT_DOUBLE_EQ(estimate_density(index).per_meter, 0.002);
}

TEST(Density, DegenerateIndexRejected) {
  InvertedIndex index{FingerprintParams{}};
  EXPECT_THROW(estimate_density(index), std::invalid_argument);
  index.insert(Trajectory{1, {{51.5, -0.1}}});
  EXPECT_THROW(estimate_density(index), std::invalid_argument);
}

TEST(Density, StableAcrossSeeds) {
  double a[2];
  for (int i = 0; i < 2; ++i) {
    GenConfig cfg;
    cfg.seed = 100 + i;
    cfg.num_routes = 10;
    cfg.traj_per_direction = 3;
    InvertedIndex index{FingerprintParams{}};
    for (const auto& s : generate(cfg).trajectories) index.insert(s);
    a[i] = estimate_density(index).per_meter;
  }
  EXPECT_GT(a[0], 0.0);
  EXPECT_NEAR(a[1] / a[0], 1.0, 0.2);
}

TEST(MotifGeodab, IdenticalSequencesGiveFullRanges) {
  const auto s = sequence({5, 9, 2, 7, 3});
  const auto r = motif_geodab(s, s, 5.0, FingerprintDensity{1.0}, 6);
  EXPECT_EQ(r.distance, 0.0);
  EXPECT_EQ(r.first, (PointRange{0, 14}));
  EXPECT_EQ(r.second, (PointRange{0, 14}));
}

TEST(MotifGeodab, DisjointSequencesReportWorstDistance) {
  const auto r = motif_geodab(sequence({1, 2, 3}), sequence({4, 5, 6}), 2.0, FingerprintDensity{1.0}, 6);
  EXPECT_EQ(r.distance, 1.0);
  EXPECT_EQ(r.first.start, 0u);
  EXPECT_EQ(r.second.start, 0u);
}

TEST(MotifGeodab, FindsPlantedWindowAndBreaksTiesEarly) {
  const auto a = sequence({1, 2, 3, 40, 41, 42, 4, 5});
  const auto b = sequence({9, 40, 41, 42, 8, 7});
  const auto r = motif_geodab(a, b, 3.0, FingerprintDensity{1.0}, 6);
  EXPECT_EQ(r.distance, 0.0);
  EXPECT_EQ(r.first, (PointRange{6, 16}));
  EXPECT_EQ(r.second, (PointRange{2, 12}));
}

TEST(MotifGeodab, Errors) {
  const auto a = sequence({1, 2, 3});
  const auto b = sequence({1, 2, 3, 4, 5});
  try {
    motif_geodab(a, b, 4.0, FingerprintDensity{1.0}, 6);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("first"), std::string::npos);
  }
  try {
    motif_geodab(b, a, 4.0, FingerprintDensity{1.0}, 6);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("second"), std::string::npos);
  }
  EXPECT_THROW(motif_geodab(a, b, 0.2, FingerprintDensity{1.0}, 6), std::invalid_argument);
}

TEST(MotifGeodab, ExhaustiveMinimum) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::uint32_t> v(0, 12);
  for (int round = 0; round < 50; ++round) {
    std::vector<std::uint32_t> x(20), y(15);
    for (auto& e : x) e = v(rng);
    for (auto& e : y) e = v(rng);
    const auto a = sequence(x), b = sequence(y);
    const std::size_t f = 4;
    const auto r = motif_geodab(a, b, 4.0, FingerprintDensity{1.0}, 6);
    const auto wa = window_sets(a, f), wb = window_sets(b, f);
    ASSERT_EQ(wa.size(), x.size() - f + 1);
    ASSERT_EQ(wb.size(), y.size() - f + 1);
    std::size_t bi = 0, bj = 0;
    double best = 2.0;
    for (std::size_t i = 0; i < wa.size(); ++i) {
      for (std::size_t j = 0; j < wb.size(); ++j) {
        const double d = jaccard_distance(wa[i], wb[j]);
        ASSERT_LE(r.distance, d);
        if (d < best) best = d, bi = i, bj = j;
      }
    }
    EXPECT_EQ(r.distance, best);
    EXPECT_EQ(r.first, window_range(a, bi, f, 6));
    EXPECT_EQ(r.second, window_range(b, bj, f, 6));
  }
}

TEST(MotifExact, WholeTrajectoryAgainstItself) {
  const Trajectory s = random_walk(12, 4);
  const auto r = motif_exact(s.points, s.points, s.points.size());
  EXPECT_EQ(r.distance, 0.0);
  EXPECT_EQ(r.first, (PointRange{0, 12}));
  EXPECT_EQ(r.second, (PointRange{0, 12}));
}

TEST(MotifExact, LengthOneIsClosestPair) {
  const Trajectory a = random_walk(15, 1), b = random_walk(17, 2);
  const auto r = motif_exact(a.points, b.points, 1);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : a.points) {
    for (const auto& q : b.points) best = std::min(best, haversine(p, q));
  }
  EXPECT_EQ(r.distance, best);
  EXPECT_EQ(r.first.size(), 1u);
}

// Second implementation: explicit coupling-table DFD per window pair.
double dfd_oracle(const std::vector<Point>& p, const std::vector<Point>& q) {
  const std::size_t m = p.size(), n = q.size();
  std::vector<std::vector<double>> c(m, std::vector<double>(n));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d = haversine(p[i], q[j]);
      if (i == 0 && j == 0) {
        c[i][j] = d;
      } else if (i == 0) {
        c[i][j] = std::max(c[i][j - 1], d);
      } else if (j == 0) {
        c[i][j] = std::max(c[i - 1][j], d);
      } else {
        c[i][j] = std::max(std::min({c[i - 1][j], c[i - 1][j - 1], c[i][j - 1]}), d);
      }
    }
  }
  return c[m - 1][n - 1];
}

TEST(MotifExact, MatchesDoubleLoopOracle) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Trajectory a = random_walk(20, 30 + seed), b = random_walk(20, 60 + seed);
    const std::size_t l = 5;
    const auto r = motif_exact(a.points, b.points, l);
    double best = std::numeric_limits<double>::infinity();
    PointRange bi, bj;
    for (std::size_t i = 0; i + l <= 20; ++i) {
      for (std::size_t j = 0; j + l <= 20; ++j) {
        const double d = dfd_oracle({a.points.begin() + i, a.points.begin() + i + l},
                                    {b.points.begin() + j, b.points.begin() + j + l});
        if (d < best) best = d, bi = {i, i + l}, bj = {j, j + l};
      }
    }
    EXPECT_EQ(r.distance, best);
    EXPECT_EQ(r.first, bi);
    EXPECT_EQ(r.second, bj);
  }
}

TEST(MotifExact, LengthOutOfRange) {
  const Trajectory a = random_walk(5, 1);
  EXPECT_THROW(motif_exact(a.points, a.points, 0), std::invalid_argument);
  EXPECT_THROW(motif_exact(a.points, a.points, 6), std::invalid_argument);
}

double iou(PointRange a, PointRange b) {
  const auto lo = std::max(a.start, b.start), hi = std::min(a.end, b.end);
  const double inter = hi > lo ? static_cast<double>(hi - lo) : 0.0;
  return inter / static_cast<double>(a.size() + b.size() - inter);
}

TEST(MotifGeodab, RecoversSharedSegmentOfGeneratedPairs) {
  GenConfig cfg;
  cfg.seed = 17;
  // Noise free so that shared cells are exact; noisy recovery is measured by
  // the acceptance binary.
  cfg.noise_sigma_m = 0.0;
  const auto pairs = generate_motif_pairs(cfg, 10, 400);
  const FingerprintParams params;
  InvertedIndex index{params};
  for (const auto& p : pairs) {
    index.insert(p.first);
    index.insert(p.second);
  }
  const auto density = estimate_density(index);
  std::size_t good = 0;
  for (const auto& p : pairs) {
    const auto na = normalize(p.first, params.depth), nb = normalize(p.second, params.depth);
    const auto fa = winnow(na, params), fb = winnow(nb, params);
    const double length = metric_length(std::span(p.first.points).subspan(
        p.shared_first.start, p.shared_first.size()));
    const auto r = motif_geodab(fa, fb, length, density, params.k);
    const auto ra = raw_range(na, r.first, p.first.points.size());
    const auto rb = raw_range(nb, r.second, p.second.points.size());
    ASSERT_LT(ra.start, ra.end);
    ASSERT_LE(ra.end, p.first.points.size());
    good += iou(ra, p.shared_first) >= 0.5 && iou(rb, p.shared_second) >= 0.5;
  }
  EXPECT_GE(good, 8u);
}

}  // namespace
}  // namespace geodabs
