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

#ifndef GEODABS_SHARD_H_
#define GEODABS_SHARD_H_

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "geodabs/fingerprint.h"
#include "geodabs/index.h"

namespace geodabs {

// Shards are equal-width ranges of geohash prefixes, so neighbours on the
// z-order curve share a shard. Shards go to nodes round-robin.
struct ShardConfig {
  int prefix_bits = 16;
  std::uint32_t num_shards = 10000;
  std::uint32_t num_nodes = 10;

  // Throws std::invalid_argument unless
  // 1 <= num_nodes <= num_shards <= 2^prefix_bits.
  void validate() const;
};

using ShardId = std::uint32_t;
using NodeId = std::uint32_t;

ShardId shard_of(Geodab g, const ShardConfig& cfg);
ShardId shard_of_prefix(std::uint32_t prefix, const ShardConfig& cfg);
NodeId node_of(ShardId shard, const ShardConfig& cfg);

// Trajectory counts at each level. A trajectory is counted once for every
// distinct prefix cell its geodabs touch; shard and node counts aggregate
// the cell counts.
struct LoadReport {
  std::map<std::uint32_t, std::uint64_t> per_cell;
  std::map<ShardId, std::uint64_t> per_shard;
  std::vector<std::uint64_t> per_node;
  // max / mean over all nodes; 0 for an empty report.
  double imbalance = 0.0;
};

LoadReport distribution_report(const InvertedIndex& index, const ShardConfig& cfg);

std::set<ShardId> shards_for_query(const FingerprintSequence& f, const ShardConfig& cfg);

}  // namespace geodabs

#endif  // GEODABS_SHARD_H_
