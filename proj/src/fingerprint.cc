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

#include "geodabs/fingerprint.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace geodabs {

void FingerprintParams::validate() const {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (t < k) throw std::invalid_argument("t must be at least k");
  if (depth < 1 || depth > kMaxGeohashDepth) {
    throw std::invalid_argument("normalization depth must be in [1, 36]");
  }
  if (prefix_bits < 0 || prefix_bits >= 32) {
    throw std::invalid_argument("prefix bits must be in [0, 31]");
  }
}

FingerprintSet FingerprintSequence::to_set() const {
  std::vector<std::uint32_t> values;
  values.reserve(records.size());
  for (const auto& r : records) values.push_back(r.geodab.value);
  return FingerprintSet(std::move(values));
}

std::uint32_t fnv1a32(std::span<const std::uint8_t> bytes) {
  std::uint32_t h = 2166136261u;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 16777619u;
  }
  return h;
}

std::uint32_t sequence_hash(std::span<const Geohash> cells) {
  std::uint32_t h = 2166136261u;
  for (const Geohash& c : cells) {
    for (int shift = 56; shift >= 0; shift -= 8) {
      h ^= static_cast<std::uint8_t>(c.bits >> shift);
      h *= 16777619u;
    }
  }
  return h;
}

Geodab merge_geodab(std::uint32_t prefix_value, int prefix_bits, std::uint32_t suffix_hash) {
  if (prefix_bits == 0) return {suffix_hash};
  const int suffix_bits = 32 - prefix_bits;
  const std::uint32_t mask = (1u << suffix_bits) - 1u;
  return {(prefix_value << suffix_bits) | (suffix_hash & mask)};
}

Geodab make_geodab(std::span<const Geohash> kgram, const FingerprintParams& params) {
  if (kgram.empty()) throw std::invalid_argument("empty k-gram");
  const Geohash& first = kgram.front();
  Geohash head;
  if (first.depth >= params.prefix_bits) {
    head = prefix(first, params.prefix_bits);
  } else {
    head = geohash_encode(geohash_decode(first).center(), params.prefix_bits);
  }
  return merge_geodab(static_cast<std::uint32_t>(head.bits), params.prefix_bits,
                      sequence_hash(kgram));
}

std::vector<std::span<const Geohash>> kgrams(const NormalizedTrajectory& n, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  std::vector<std::span<const Geohash>> out;
  const std::size_t len = n.cells.size();
  const auto kk = static_cast<std::size_t>(k);
  if (len < kk) return out;
  out.reserve(len - kk + 1);
  std::span<const Geohash> all(n.cells);
  for (std::size_t i = 0; i + kk <= len; ++i) out.push_back(all.subspan(i, kk));
  return out;
}

std::vector<std::uint32_t> candidate_geodabs(const NormalizedTrajectory& n,
                                             const FingerprintParams& params) {
  std::vector<std::uint32_t> out;
  for (const auto& gram : kgrams(n, params.k)) out.push_back(make_geodab(gram, params).value);
  return out;
}

std::vector<FingerprintRecord> winnow_candidates(std::span<const std::uint32_t> candidates,
                                                 std::size_t window) {
  if (window == 0) throw std::invalid_argument("window must be at least 1");
  std::vector<FingerprintRecord> out;
  if (candidates.empty()) return out;
  const std::size_t w = std::min(window, candidates.size());
  const std::size_t windows = candidates.size() - w + 1;
  for (std::size_t start = 0; start < windows; ++start) {
    std::size_t m = start;
    for (std::size_t j = start + 1; j < start + w; ++j) {
      if (candidates[j] <= candidates[m]) m = j;
    }
    if (out.empty() || out.back().position != m) {
      out.push_back({Geodab{candidates[m]}, m});
    }
  }
  return out;
}

FingerprintSequence winnow(const NormalizedTrajectory& n, const FingerprintParams& params) {
  params.validate();
  const auto candidates = candidate_geodabs(n, params);
  return {winnow_candidates(candidates, static_cast<std::size_t>(params.window()))};
}

FingerprintSequence fingerprint(const Trajectory& s, const FingerprintParams& params) {
  params.validate();
  return winnow(normalize(s, params.depth), params);
}

}  // namespace geodabs
