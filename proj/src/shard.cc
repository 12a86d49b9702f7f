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

#include "geodabs/shard.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace geodabs {

void ShardConfig::validate() const {
  if (prefix_bits < 0 || prefix_bits >= 32) throw std::invalid_argument("prefix bits must be in [0, 31]");
  if (num_nodes < 1) throw std::invalid_argument("need at least one node");
  if (num_shards < num_nodes) throw std::invalid_argument("need at least as many shards as nodes");
  if (static_cast<std::uint64_t>(num_shards) > (std::uint64_t{1} << prefix_bits)) {
    throw std::invalid_argument("more shards than prefix values");
  }
}

ShardId shard_of_prefix(std::uint32_t prefix, const ShardConfig& cfg) {
  return static_cast<ShardId>((static_cast<std::uint64_t>(prefix) * cfg.num_shards) >> cfg.prefix_bits);
}

ShardId shard_of(Geodab g, const ShardConfig& cfg) {
  return shard_of_prefix(g.prefix(cfg.prefix_bits), cfg);
}

NodeId node_of(ShardId shard, const ShardConfig& cfg) { return shard % cfg.num_nodes; }

LoadReport distribution_report(const InvertedIndex& index, const ShardConfig& cfg) {
  cfg.validate();
  if (cfg.prefix_bits > index.params().prefix_bits) {
    throw std::invalid_argument("shard prefix longer than the index's geodab prefix");
  }
  LoadReport report;
  if (index.size() == 0) return report;
  std::vector<std::uint32_t> cells;
  for (const auto& [id, set] : index.core().sets()) {
    cells.clear();
    for (std::uint32_t v : set) cells.push_back(Geodab{v}.prefix(cfg.prefix_bits));
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    for (std::uint32_t c : cells) ++report.per_cell[c];
  }
  report.per_node.assign(cfg.num_nodes, 0);
  for (const auto& [cell, count] : report.per_cell) {
    const ShardId s = shard_of_prefix(cell, cfg);
    report.per_shard[s] += count;
    report.per_node[node_of(s, cfg)] += count;
  }
  const std::uint64_t total = std::accumulate(report.per_node.begin(), report.per_node.end(), std::uint64_t{0});
  if (total > 0) {
    const double mean = static_cast<double>(total) / cfg.num_nodes;
    report.imbalance = static_cast<double>(*std::max_element(report.per_node.begin(), report.per_node.end())) / mean;
  }
  return report;
}

std::set<ShardId> shards_for_query(const FingerprintSequence& f, const ShardConfig& cfg) {
  cfg.validate();
  std::set<ShardId> out;
  for (const auto& r : f.records) out.insert(shard_of(r.geodab, cfg));
  return out;
}

}  // namespace geodabs
