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

#ifndef GEODABS_BASELINE_H_
#define GEODABS_BASELINE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "geodabs/geo.h"
#include "geodabs/trajectory.h"

namespace geodabs {

// (rows + 1) x (cols + 1) dynamic-programming table in meters, row-major.
// Reusable across calls to avoid reallocating.
class DistanceMatrix {
 public:
  void reset(std::size_t rows, std::size_t cols, double fill);
  double& at(std::size_t i, std::size_t j) { return cells_[i * stride_ + j]; }
  double at(std::size_t i, std::size_t j) const { return cells_[i * stride_ + j]; }

 private:
  std::vector<double> cells_;
  std::size_t stride_ = 0;
};

// Dynamic time warping with haversine ground distance. Throws
// std::invalid_argument on empty input.
double dtw(std::span<const Point> p, std::span<const Point> q);
double dtw(std::span<const Point> p, std::span<const Point> q, DistanceMatrix& work);

// Discrete Fréchet distance with haversine ground distance.
double dfd(std::span<const Point> p, std::span<const Point> q);
double dfd(std::span<const Point> p, std::span<const Point> q, DistanceMatrix& work);

inline double dtw(const Trajectory& p, const Trajectory& q) { return dtw(p.points, q.points); }
inline double dfd(const Trajectory& p, const Trajectory& q) { return dfd(p.points, q.points); }

enum class DistanceMethod { kDtw, kDfd, kJaccard };

std::string_view method_name(DistanceMethod m);
DistanceMethod parse_method(std::string_view name);

struct TimingRecord {
  DistanceMethod method = DistanceMethod::kDtw;
  std::size_t length = 0;
  std::size_t candidates = 0;
  double millis = 0.0;
};

// Random-walk trajectory of `length` points about 14 m apart.
Trajectory random_walk(std::size_t length, std::uint64_t seed, Point start = {51.5, -0.12});

// Times scoring one query of `length` points against `candidates`
// trajectories of the same length, single-threaded. Reports the fastest of
// `repeats` runs. For kJaccard the query is fingerprinted inside the timed
// region and the candidates' sets are prepared beforehand, as an index
// would hold them.
TimingRecord bench_distance(DistanceMethod method, std::size_t length, std::size_t candidates,
                            int repeats = 3, std::uint64_t seed = 1);

}  // namespace geodabs

#endif  // GEODABS_BASELINE_H_
