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

#ifndef GEODABS_FINGERPRINT_H_
#define GEODABS_FINGERPRINT_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "geodabs/geo.h"
#include "geodabs/normalize.h"
#include "geodabs/term_set.h"
#include "geodabs/trajectory.h"

namespace geodabs {

// k:      k-gram length; shorter common runs are treated as noise.
// t:      common runs of at least t cells are always detected.
// depth:  normalization depth in bits.
// prefix_bits: geohash prefix carried in the top bits of each geodab.
struct FingerprintParams {
  int k = 6;
  int t = 12;
  int depth = kDefaultNormalizationDepth;
  int prefix_bits = 16;

  int window() const { return t - k + 1; }
  // Throws std::invalid_argument unless 1 <= k <= t, 1 <= depth <= 36 and
  // 0 <= prefix_bits < 32.
  void validate() const;

  friend bool operator==(const FingerprintParams&, const FingerprintParams&) = default;
};

// A 32-bit fingerprint: locality prefix in the high bits, order-sensitive
// k-gram hash in the low bits.
struct Geodab {
  std::uint32_t value = 0;

  std::uint32_t prefix(int prefix_bits) const {
    return prefix_bits == 0 ? 0u : value >> (32 - prefix_bits);
  }
  std::uint32_t suffix(int prefix_bits) const {
    return prefix_bits == 0 ? value : value & ((1u << (32 - prefix_bits)) - 1u);
  }

  friend bool operator==(const Geodab&, const Geodab&) = default;
  friend auto operator<=>(const Geodab&, const Geodab&) = default;
};

struct FingerprintRecord {
  Geodab geodab;
  // Index of the k-gram's first cell in the normalized trajectory.
  std::size_t position = 0;

  friend bool operator==(const FingerprintRecord&, const FingerprintRecord&) = default;
};

// Winnowed fingerprints in trajectory order; positions strictly increase.
struct FingerprintSequence {
  std::vector<FingerprintRecord> records;

  std::size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }
  FingerprintSet to_set() const;

  friend bool operator==(const FingerprintSequence&, const FingerprintSequence&) = default;
};

// 32-bit FNV-1a.
std::uint32_t fnv1a32(std::span<const std::uint8_t> bytes);

// FNV-1a over the cells' bit patterns, each written as 8 big-endian bytes.
std::uint32_t sequence_hash(std::span<const Geohash> cells);

// prefix << (32 - prefix_bits) | (suffix masked to 32 - prefix_bits bits).
Geodab merge_geodab(std::uint32_t prefix_value, int prefix_bits, std::uint32_t suffix_hash);

// Geodab of one k-gram of normalized cells. The prefix is the depth
// `prefix_bits` geohash of the first cell.
Geodab make_geodab(std::span<const Geohash> kgram, const FingerprintParams& params);

// All contiguous windows of k cells; empty when the input is shorter than k.
std::vector<std::span<const Geohash>> kgrams(const NormalizedTrajectory& n, int k);

// Geodab of every k-gram, in order.
std::vector<std::uint32_t> candidate_geodabs(const NormalizedTrajectory& n,
                                             const FingerprintParams& params);

// Winnowing over a candidate list: each window of `window` consecutive
// candidates selects its right-most minimum; a position picked by several
// consecutive windows is emitted once. Lists shorter than the window form a
// single window.
std::vector<FingerprintRecord> winnow_candidates(std::span<const std::uint32_t> candidates,
                                                 std::size_t window);

FingerprintSequence winnow(const NormalizedTrajectory& n, const FingerprintParams& params);

// normalize() followed by winnow().
FingerprintSequence fingerprint(const Trajectory& s, const FingerprintParams& params);

}  // namespace geodabs

#endif  // GEODABS_FINGERPRINT_H_
