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

#include "geodabs/normalize.h"

#include <stdexcept>
#include <string>

namespace geodabs {

double metric_length(std::span<const Point> points) {
  double total = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    total += haversine(points[i - 1], points[i]);
  }
  return total;
}

NormalizedTrajectory normalize(const Trajectory& s, int depth) {
  if (s.points.empty()) {
    throw std::invalid_argument("cannot normalize empty trajectory " + std::to_string(s.id));
  }
  if (depth < 1 || depth > kMaxGeohashDepth) {
    throw std::invalid_argument("normalization depth must be in [1, 36]");
  }
  NormalizedTrajectory out;
  out.id = s.id;
  out.depth = depth;
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const Geohash cell = geohash_encode(s.points[i], depth);
    if (!out.cells.empty() && out.cells.back() == cell) continue;
    out.cells.push_back(cell);
    out.points.push_back(geohash_decode(cell).center());
    out.source.push_back(i);
  }
  return out;
}

GeohashNormalizer::GeohashNormalizer(int depth) : depth_(depth) {
  if (depth < 1 || depth > kMaxGeohashDepth) {
    throw std::invalid_argument("normalization depth must be in [1, 36]");
  }
}

}  // namespace geodabs
