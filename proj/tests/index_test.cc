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

#include "geodabs/index.h"

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "geodabs/baseline.h"
#include "geodabs/datagen.h"

namespace geodabs {
namespace {

TEST(Jaccard, Examples) {
  const FingerprintSet a{1, 2, 3}, b{2, 3, 4}, c{7, 8};
  EXPECT_EQ(jaccard_distance(a, a), 0.0);
  EXPECT_EQ(jaccard_distance(a, c), 1.0);
  EXPECT_EQ(jaccard_distance(a, b), 0.5);
  EXPECT_EQ(jaccard_distance(FingerprintSet{}, FingerprintSet{}), 0.0);
  EXPECT_EQ(jaccard_distance(a, FingerprintSet{}), 1.0);
}

TEST(Jaccard, MetricProperties) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<std::uint32_t> term(0, 30);
  std::uniform_int_distribution<int> size(0, 12);
  auto random_set = [&] {
    std::vector<std::uint32_t> v(static_cast<std::size_t>(size(rng)));
    for (auto& x : v) x = term(rng);
    return FingerprintSet(v);
  };
  for (int i = 0; i < 3000; ++i) {
    const auto f = random_set(), g = random_set(), h = random_set();
    const double fg = jaccard_distance(f, g), gh = jaccard_distance(g, h), fh = jaccard_distance(f, h);
    ASSERT_EQ(fg, jaccard_distance(g, f));
    ASSERT_GE(fg, 0.0);
    ASSERT_LE(fg, 1.0);
    ASSERT_EQ(jaccard_distance(f, f), 0.0);
    // Exact check in integers: 1 - a/b <= (1 - c/d) + (1 - e/g).
    auto frac = [](const FingerprintSet& x, const FingerprintSet& y) {
      const auto inter = static_cast<long long>(x.intersection_size(y));
      const auto uni = static_cast<long long>(x.union_size(y));
      return uni == 0 ? std::pair{0LL, 1LL} : std::pair{uni - inter, uni};
    };
    const auto [n1, d1] = frac(f, h);
    const auto [n2, d2] = frac(f, g);
    const auto [n3, d3] = frac(g, h);
    ASSERT_LE(n1 * d2 * d3, n2 * d1 * d3 + n3 * d1 * d2);
    (void)fh;
    (void)gh;
  }
}

TEST(TermSet, SortsAndDeduplicates) {
  const FingerprintSet s{5, 1, 5, 3};
  EXPECT_EQ(std::vector<std::uint32_t>(s.begin(), s.end()), (std::vector<std::uint32_t>{1, 3, 5}));
  EXPECT_TRUE(s.contains(3));
  EXPECT_FALSE(s.contains(4));
  EXPECT_EQ(s.intersection_size(FingerprintSet{3, 5, 9}), 2u);
  EXPECT_EQ(s.union_size(FingerprintSet{3, 5, 9}), 4u);
}

Trajectory shifted_walk(TrajectoryId id, std::uint64_t seed) {
  Trajectory s = random_walk(300, seed);
  s.id = id;
  return s;
}

TEST(InvertedIndex, SelfRetrieval) {
  InvertedIndex index{FingerprintParams{}};
  for (TrajectoryId id = 0; id < 20; ++id) index.insert(shifted_walk(id, 100 + id));
  for (TrajectoryId id = 0; id < 20; ++id) {
    const auto r = index.query(shifted_walk(999, 100 + id), 1.0);
    ASSERT_FALSE(r.results.empty());
    EXPECT_EQ(r.results[0].id, id);
    EXPECT_EQ(r.results[0].distance, 0.0);
  }
  EXPECT_TRUE(index.verify());
}

TEST(InvertedIndex, NoiseThresholdTrajectory) {
  InvertedIndex index{FingerprintParams{}};
  const Trajectory tiny{7, {{51.5, -0.1}, {51.5001, -0.1}}};
  index.insert(tiny);
  EXPECT_TRUE(index.contains(7));
  EXPECT_TRUE(index.set_of(7).empty());
  index.insert(shifted_walk(8, 3));
  const auto r = index.query(tiny, 1.0);
  EXPECT_TRUE(r.below_noise_threshold);
  EXPECT_TRUE(r.results.empty());
  for (const auto& hit : index.query(shifted_walk(0, 3), 1.0).results) EXPECT_NE(hit.id, 7u);
}

TEST(InvertedIndex, Errors) {
  InvertedIndex index{FingerprintParams{}};
  index.insert(shifted_walk(1, 1));
  EXPECT_THROW(index.insert(shifted_walk(1, 2)), std::invalid_argument);
  EXPECT_THROW(index.insert(Trajectory{2, {}}), std::invalid_argument);
  EXPECT_THROW(index.query(shifted_walk(3, 1), 1.5), std::invalid_argument);
  EXPECT_THROW(index.query(shifted_walk(3, 1), -0.1), std::invalid_argument);
  EXPECT_THROW(InvertedIndex(FingerprintParams{6, 3, 36, 16}), std::invalid_argument);
}

class GeneratedIndex : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    GenConfig cfg;
    cfg.seed = 5;
    cfg.num_routes = 10;
    cfg.traj_per_direction = 5;
    data_ = new Dataset(generate(cfg));
    index_ = new InvertedIndex(FingerprintParams{});
    for (const auto& s : data_->trajectories) index_->insert(s);
  }
  static void TearDownTestSuite() {
    delete data_;
    delete index_;
  }
  static Dataset* data_;
  static InvertedIndex* index_;
};

Dataset* GeneratedIndex::data_ = nullptr;
InvertedIndex* GeneratedIndex::index_ = nullptr;

TEST_F(GeneratedIndex, SameRouteTrajectoriesFindEachOther) {
  for (const auto& s : data_->trajectories) {
    const auto label = data_->labels.at(s.id);
    const auto r = index_->query(s, 1.0);
    std::set<TrajectoryId> hits;
    for (const auto& h : r.results) {
      hits.insert(h.id);
      if (h.id != s.id && data_->labels.at(h.id) == label) ASSERT_LT(h.distance, 1.0);
    }
    std::size_t same = 0;
    for (const auto& [id, l] : data_->labels) same += (l == label && id != s.id && index_->contains(id) && hits.contains(id));
    EXPECT_GT(same, 0u) << "trajectory " << s.id;
  }
}

TEST_F(GeneratedIndex, ForwardRanksAboveReverse) {
  std::size_t top_relevant = 0;
  for (const auto& q : data_->queries) {
    const auto label = data_->labels.at(q.id);
    const auto r = index_->query(q, 1.0).results;
    ASSERT_FALSE(r.empty());
    top_relevant += data_->labels.at(r.front().id) == label;
    double relevant = 0.0, opposite = 0.0;
    std::size_t n_relevant = 0, n_opposite = 0;
    for (const auto& s : data_->trajectories) {
      const auto l = data_->labels.at(s.id);
      if (l.route != label.route) continue;
      double d = 1.0;
      for (const auto& h : r) {
        if (h.id == s.id) d = h.distance;
      }
      if (l.reverse == label.reverse) {
        relevant += d;
        ++n_relevant;
      } else {
        opposite += d;
        ++n_opposite;
      }
    }
    EXPECT_LT(relevant / static_cast<double>(n_relevant), opposite / static_cast<double>(n_opposite))
        << "query " << q.id;
  }
  EXPECT_GE(top_relevant * 10, data_->queries.size() * 9);
}

TEST_F(GeneratedIndex, FullRadiusReturnsExactlySharingIds) {
  for (const auto& q : data_->queries) {
    const auto qset = fingerprint(q, index_->params()).to_set();
    std::set<TrajectoryId> expected;
    for (const auto& [id, set] : index_->core().sets()) {
      if (set.intersection_size(qset) > 0) expected.insert(id);
    }
    std::set<TrajectoryId> got;
    for (const auto& h : index_->query(q, 1.0).results) got.insert(h.id);
    EXPECT_EQ(got, expected);
  }
}

TEST_F(GeneratedIndex, ShrinkingRadiusGivesPrefix) {
  for (const auto& q : data_->queries) {
    const auto full = index_->query(q, 1.0).results;
    for (std::size_t i = 1; i < full.size(); ++i) ASSERT_TRUE(!ranks_before(full[i], full[i - 1]));
    for (double dmax : {0.95, 0.8, 0.5, 0.2, 0.0}) {
      const auto part = index_->query(q, dmax).results;
      ASSERT_LE(part.size(), full.size());
      for (std::size_t i = 0; i < part.size(); ++i) {
        ASSERT_EQ(part[i], full[i]);
        ASSERT_LE(part[i].distance, dmax);
      }
      if (part.size() < full.size()) ASSERT_GT(full[part.size()].distance, dmax);
    }
    const auto limited = index_->query(q, 1.0, 3).results;
    ASSERT_EQ(limited.size(), std::min<std::size_t>(3, full.size()));
  }
}

TEST(InvertedIndex, ZeroRadiusOnlyExactSets) {
  InvertedIndex index{FingerprintParams{}};
  const Trajectory a = shifted_walk(1, 50);
  Trajectory b = a;
  b.id = 2;
  Trajectory c = a;
  c.id = 3;
  c.points.resize(c.points.size() / 2);
  index.insert(a);
  index.insert(b);
  index.insert(c);
  const auto r = index.query(a, 0.0).results;
  ASSERT_EQ(r.size(), 2u);
  // Equal distances fall back to id order.
  EXPECT_EQ(r[0].id, 1u);
  EXPECT_EQ(r[1].id, 2u);
}

}  // namespace
}  // namespace geodabs
