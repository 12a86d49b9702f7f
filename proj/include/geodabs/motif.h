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

#ifndef GEODABS_MOTIF_H_
#define GEODABS_MOTIF_H_

#include <cstddef>
#include <span>
#include <vector>

#include "geodabs/fingerprint.h"
#include "geodabs/geo.h"
#include "geodabs/index.h"
#include "geodabs/term_set.h"

namespace geodabs {

// Half-open point-index range [start, end).
struct PointRange {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - start; }
  friend bool operator==(const PointRange&, const PointRange&) = default;
};

// Jaccard distance for the geodab search, meters for the exact search.
struct MotifResult {
  PointRange first;
  PointRange second;
  double distance = 0.0;

  friend bool operator==(const MotifResult&, const MotifResult&) = default;
};

struct FingerprintDensity {
  double per_meter = 0.0;
};

// Total winnowed fingerprints over total normalized metric length. Throws
// std::invalid_argument when either total is zero.
FingerprintDensity estimate_density(const InvertedIndex& index);

// Number of fingerprints standing in for a motif of `length_m` meters.
std::size_t motif_fingerprint_count(double length_m, FingerprintDensity density);

// Distinct geodab values of every window of `f` consecutive records.
std::vector<FingerprintSet> window_sets(const FingerprintSequence& seq, std::size_t f);

// Point ranges covered by records [first, first + f) of `seq`; the end
// extends k points past the last record so the final k-gram is included.
PointRange window_range(const FingerprintSequence& seq, std::size_t first, std::size_t f, int k);

// Exhaustive scan of all window pairs of f = round(length_m * density)
// records, minimizing the Jaccard distance of their value sets. Ties go to
// the earlier window in `first`, then in `second`. Throws
// std::invalid_argument when f < 1 or either sequence is shorter than f.
// Maps normalized point indices back to the raw trajectory `n` was built
// from, which had `raw_size` points.
PointRange raw_range(const NormalizedTrajectory& n, PointRange r, std::size_t raw_size);

MotifResult motif_geodab(const FingerprintSequence& first, const FingerprintSequence& second,
                         double length_m, FingerprintDensity density, int k);

// Exact search: the pair of `length`-point sub-trajectories with the
// smallest discrete Fréchet distance, same tie rule. O(n^2 * length^2).
MotifResult motif_exact(std::span<const Point> first, std::span<const Point> second,
                        std::size_t length);

}  // namespace geodabs

#endif  // GEODABS_MOTIF_H_
