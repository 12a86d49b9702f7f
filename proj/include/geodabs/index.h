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

#ifndef GEODABS_INDEX_H_
#define GEODABS_INDEX_H_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "geodabs/fingerprint.h"
#include "geodabs/term_set.h"
#include "geodabs/trajectory.h"

namespace geodabs {

inline constexpr std::size_t kNoLimit = std::numeric_limits<std::size_t>::max();

struct ScoredId {
  TrajectoryId id = 0;
  double distance = 0.0;

  friend bool operator==(const ScoredId&, const ScoredId&) = default;
};

// Ascending by distance, then by id.
using RankedResult = std::vector<ScoredId>;

inline bool ranks_before(const ScoredId& a, const ScoredId& b) {
  return a.distance < b.distance || (a.distance == b.distance && a.id < b.id);
}

// Terms -> sorted posting lists of trajectory ids, plus each trajectory's
// term set for Jaccard scoring. Shared by the geodab index and the
// geohash-cell baseline.
template <typename Term>
class PostingIndex {
 public:
  using Set = TermSet<Term>;
  using PostingList = std::vector<TrajectoryId>;

  // Throws std::invalid_argument when `id` is already present.
  void insert(TrajectoryId id, Set terms) {
    if (sets_.contains(id)) {
      throw std::invalid_argument("duplicate trajectory id " + std::to_string(id));
    }
    for (Term t : terms) {
      PostingList& list = postings_[t];
      if (list.empty() || list.back() < id) {
        list.push_back(id);
      } else {
        list.insert(std::lower_bound(list.begin(), list.end(), id), id);
      }
    }
    sets_.emplace(id, std::move(terms));
  }

  bool contains(TrajectoryId id) const { return sets_.contains(id); }
  std::size_t trajectory_count() const { return sets_.size(); }
  std::size_t term_count() const { return postings_.size(); }
  const Set& set_of(TrajectoryId id) const { return sets_.at(id); }
  const std::unordered_map<Term, PostingList>& postings() const { return postings_; }
  const std::unordered_map<TrajectoryId, Set>& sets() const { return sets_; }

  // Ids sharing at least one term with `query`, ascending.
  std::vector<TrajectoryId> candidates(const Set& query) const {
    std::vector<TrajectoryId> ids;
    for (Term t : query) {
      auto it = postings_.find(t);
      if (it != postings_.end()) ids.insert(ids.end(), it->second.begin(), it->second.end());
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
  }

  RankedResult query(const Set& query, double max_distance, std::size_t limit = kNoLimit) const {
    if (!(max_distance >= 0.0 && max_distance <= 1.0)) {
      throw std::invalid_argument("max distance must be in [0, 1]");
    }
    RankedResult out;
    for (TrajectoryId id : candidates(query)) {
      const double d = jaccard_distance(query, sets_.at(id));
      if (d <= max_distance) out.push_back({id, d});
    }
    std::sort(out.begin(), out.end(), ranks_before);
    if (out.size() > limit) out.resize(limit);
    return out;
  }

  // Checks that every posting points at a set holding the term and every
  // set term has a posting for its trajectory.
  bool verify() const {
    std::size_t pairs = 0;
    for (const auto& [term, list] : postings_) {
      if (list.empty()) return false;
      for (std::size_t i = 0; i < list.size(); ++i) {
        if (i > 0 && list[i - 1] >= list[i]) return false;
        auto it = sets_.find(list[i]);
        if (it == sets_.end() || !it->second.contains(term)) return false;
      }
      pairs += list.size();
    }
    std::size_t set_terms = 0;
    for (const auto& [id, s] : sets_) set_terms += s.size();
    return pairs == set_terms;
  }

  friend bool operator==(const PostingIndex&, const PostingIndex&) = default;

 private:
  std::unordered_map<Term, PostingList> postings_;
  std::unordered_map<TrajectoryId, Set> sets_;
};

struct TrajectoryMeta {
  std::uint64_t point_count = 0;
  std::uint64_t normalized_count = 0;
  std::uint64_t fingerprint_count = 0;
  // Metric length of the normalized trajectory.
  double normalized_length_m = 0.0;

  friend bool operator==(const TrajectoryMeta&, const TrajectoryMeta&) = default;
};

struct QueryResult {
  RankedResult results;
  // Set when the query produced no fingerprints at all.
  bool below_noise_threshold = false;
};

// Fingerprinted trajectory ready to be added to an index. Produced by
// prepare(), which is the part of insertion that can run in parallel.
struct PreparedTrajectory {
  TrajectoryId id = 0;
  FingerprintSet set;
  TrajectoryMeta meta;
};

PreparedTrajectory prepare(const Trajectory& s, const FingerprintParams& params);

// Inverted index of winnowed geodabs with Jaccard-ranked retrieval.
// Single writer while building; concurrent readers once built.
class InvertedIndex {
 public:
  InvertedIndex() = default;
  explicit InvertedIndex(FingerprintParams params);

  const FingerprintParams& params() const { return params_; }

  // Normalizes, winnows and adds `s`. Throws std::invalid_argument for a
  // duplicate id or an empty trajectory.
  void insert(const Trajectory& s);
  void insert(PreparedTrajectory prepared);

  QueryResult query(const Trajectory& q, double max_distance,
                    std::size_t limit = kNoLimit) const;
  RankedResult query(const FingerprintSet& q, double max_distance,
                     std::size_t limit = kNoLimit) const {
    return core_.query(q, max_distance, limit);
  }

  std::size_t size() const { return core_.trajectory_count(); }
  std::size_t term_count() const { return core_.term_count(); }
  bool contains(TrajectoryId id) const { return core_.contains(id); }
  const FingerprintSet& set_of(TrajectoryId id) const { return core_.set_of(id); }
  const TrajectoryMeta& meta_of(TrajectoryId id) const { return meta_.at(id); }
  const std::map<TrajectoryId, TrajectoryMeta>& meta() const { return meta_; }
  const PostingIndex<std::uint32_t>& core() const { return core_; }

  bool verify() const;

  friend bool operator==(const InvertedIndex&, const InvertedIndex&) = default;

 private:
  FingerprintParams params_;
  PostingIndex<std::uint32_t> core_;
  std::map<TrajectoryId, TrajectoryMeta> meta_;

  friend class IndexReader;
};

}  // namespace geodabs

#endif  // GEODABS_INDEX_H_
