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

#ifndef GEODABS_TRAJECTORY_H_
#define GEODABS_TRAJECTORY_H_

#include <cstdint>
#include <span>
#include <vector>

#include "geodabs/geo.h"

namespace geodabs {

using TrajectoryId = std::uint64_t;

// An identified, ordered point sequence. Direction is significant.
struct Trajectory {
  TrajectoryId id = 0;
  std::vector<Point> points;
};

// Sum of consecutive haversine distances, in meters.
double metric_length(std::span<const Point> points);

}  // namespace geodabs

#endif  // GEODABS_TRAJECTORY_H_
