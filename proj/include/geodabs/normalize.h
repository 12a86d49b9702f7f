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

#ifndef GEODABS_NORMALIZE_H_
#define GEODABS_NORMALIZE_H_

#include <vector>

#include "geodabs/geo.h"
#include "geodabs/trajectory.h"

namespace geodabs {

inline constexpr int kDefaultNormalizationDepth = 36;

// Cells at a fixed depth with consecutive duplicates removed, plus the cell
// centers that stand in for the original points.
struct NormalizedTrajectory {
  TrajectoryId id = 0;
  int depth = kDefaultNormalizationDepth;
  std::vector<Geohash> cells;
  std::vector<Point> points;
  // Index of the first raw point that fell into each cell.
  std::vector<std::size_t> source;

  std::size_t size() const { return cells.size(); }
  Trajectory as_trajectory() const { return {id, points}; }
};

// Snaps every point to its depth-`depth` cell and collapses runs of the
// same cell. Throws std::invalid_argument for an empty trajectory or a
// depth outside [1, 36].
NormalizedTrajectory normalize(const Trajectory& s, int depth = kDefaultNormalizationDepth);

// Extension point for other normalizations (e.g. road-network snapping).
class Normalizer {
 public:
  virtual ~Normalizer() = default;
  virtual NormalizedTrajectory operator()(const Trajectory& s) const = 0;
};

class GeohashNormalizer final : public Normalizer {
 public:
  explicit GeohashNormalizer(int depth = kDefaultNormalizationDepth);
  NormalizedTrajectory operator()(const Trajectory& s) const override {
    return normalize(s, depth_);
  }
  int depth() const { return depth_; }

 private:
  int depth_;
};

}  // namespace geodabs

#endif  // GEODABS_NORMALIZE_H_
