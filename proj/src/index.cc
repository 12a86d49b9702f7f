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

namespace geodabs {

PreparedTrajectory prepare(const Trajectory& s, const FingerprintParams& params) {
  if (s.points.empty()) {
    throw std::invalid_argument("cannot index empty trajectory " + std::to_string(s.id));
  }
  const NormalizedTrajectory n = normalize(s, params.depth);
  const FingerprintSequence seq = winnow(n, params);
  PreparedTrajectory out;
  out.id = s.id;
  out.set = seq.to_set();
  out.meta.point_count = s.points.size();
  out.meta.normalized_count = n.size();
  out.meta.fingerprint_count = seq.size();
  out.meta.normalized_length_m = metric_length(n.points);
  return out;
}

InvertedIndex::InvertedIndex(FingerprintParams params) : params_(params) {
  params_.validate();
}

void InvertedIndex::insert(const Trajectory& s) {
  if (core_.contains(s.id)) {
    throw std::invalid_argument("duplicate trajectory id " + std::to_string(s.id));
  }
  insert(prepare(s, params_));
}

void InvertedIndex::insert(PreparedTrajectory prepared) {
  core_.insert(prepared.id, std::move(prepared.set));
  meta_.emplace(prepared.id, prepared.meta);
}

QueryResult InvertedIndex::query(const Trajectory& q, double max_distance,
                                 std::size_t limit) const {
  if (!(max_distance >= 0.0 && max_distance <= 1.0)) {
    throw std::invalid_argument("max distance must be in [0, 1]");
  }
  QueryResult out;
  const FingerprintSet set = fingerprint(q, params_).to_set();
  if (set.empty()) {
    out.below_noise_threshold = true;
    return out;
  }
  out.results = core_.query(set, max_distance, limit);
  return out;
}

bool InvertedIndex::verify() const {
  if (meta_.size() != core_.trajectory_count()) return false;
  for (const auto& [id, m] : meta_) {
    if (!core_.contains(id)) return false;
    if (core_.set_of(id).size() > m.fingerprint_count) return false;
  }
  return core_.verify();
}

}  // namespace geodabs
