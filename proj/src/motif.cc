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

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "geodabs/baseline.h"

namespace geodabs {

FingerprintDensity estimate_density(const InvertedIndex& index) {
  double fingerprints = 0.0;
  double meters = 0.0;
  for (const auto& [id, m] : index.meta()) {
    fingerprints += static_cast<double>(m.fingerprint_count);
    meters += m.normalized_length_m;
  }
  if (fingerprints <= 0.0 || meters <= 0.0) {
    throw std::invalid_argument(
        "cannot estimate fingerprint density: index has no fingerprints or no length");
  }
  return {fingerprints / meters};
}

std::size_t motif_fingerprint_count(double length_m, FingerprintDensity density) {
  const double f = std::round(length_m * density.per_meter);
  return f < 1.0 ? 0 : static_cast<std::size_t>(f);
}

std::vector<FingerprintSet> window_sets(const FingerprintSequence& seq, std::size_t f) {
  std::vector<FingerprintSet> out;
  if (f == 0 || seq.size() < f) return out;
  out.reserve(seq.size() - f + 1);
  std::vector<std::uint32_t> values;
  for (std::size_t i = 0; i + f <= seq.size(); ++i) {
    values.clear();
    for (std::size_t r = i; r < i + f; ++r) values.push_back(seq.records[r].geodab.value);
    out.emplace_back(values);
  }
  return out;
}

PointRange window_range(const FingerprintSequence& seq, std::size_t first, std::size_t f, int k) {
  return {seq.records[first].position, seq.records[first + f - 1].position + static_cast<std::size_t>(k)};
}

PointRange raw_range(const NormalizedTrajectory& n, PointRange r, std::size_t raw_size) {
  const std::size_t end = r.end < n.size() ? n.source[r.end] : raw_size;
  return {n.source.at(r.start), end};
}

MotifResult motif_geodab(const FingerprintSequence& first, const FingerprintSequence& second,
                         double length_m, FingerprintDensity density, int k) {
  const std::size_t f = motif_fingerprint_count(length_m, density);
  if (f == 0) throw std::invalid_argument("motif length translates to zero fingerprints");
  if (first.size() < f) {
    throw std::invalid_argument("first trajectory has " + std::to_string(first.size()) +
                                " fingerprints, motif needs " + std::to_string(f));
  }
  if (second.size() < f) {
    throw std::invalid_argument("second trajectory has " + std::to_string(second.size()) +
                                " fingerprints, motif needs " + std::to_string(f));
  }
  const auto a = window_sets(first, f);
  const auto b = window_sets(second, f);
  std::size_t best_i = 0, best_j = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double d = jaccard_distance(a[i], b[j]);
      if (d < best) {
        best = d;
        best_i = i;
        best_j = j;
      }
    }
  }
  return {window_range(first, best_i, f, k), window_range(second, best_j, f, k), best};
}

MotifResult motif_exact(std::span<const Point> first, std::span<const Point> second,
                        std::size_t length) {
  if (length < 1 || length > first.size() || length > second.size()) {
    throw std::invalid_argument("motif length " + std::to_string(length) +
                                " outside [1, min trajectory length]");
  }
  DistanceMatrix work;
  MotifResult best{{0, length}, {0, length}, std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i + length <= first.size(); ++i) {
    for (std::size_t j = 0; j + length <= second.size(); ++j) {
      const double d = dfd(first.subspan(i, length), second.subspan(j, length), work);
      if (d < best.distance) best = {{i, i + length}, {j, j + length}, d};
    }
  }
  return best;
}

}  // namespace geodabs
