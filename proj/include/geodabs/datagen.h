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

#ifndef GEODABS_DATAGEN_H_
#define GEODABS_DATAGEN_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <vector>

#include "geodabs/geo.h"
#include "geodabs/motif.h"
#include "geodabs/trajectory.h"
#include "geodabs/trajectory_io.h"

namespace geodabs {

struct BoundingBox {
  double lat_min = 0.0;
  double lat_max = 0.0;
  double lon_min = 0.0;
  double lon_max = 0.0;

  bool valid() const;
  Point center() const { return {(lat_min + lat_max) / 2.0, (lon_min + lon_max) / 2.0}; }
  // Same extent, moved to a new center.
  BoundingBox recentered(Point c) const;
};

// About 300 km2 around central London.
inline constexpr BoundingBox kLondonBox{51.4300, 51.5850, -0.2500, 0.0000};

struct GenConfig {
  std::uint64_t seed = 1;
  std::size_t num_routes = 50;
  std::size_t traj_per_direction = 10;
  double sample_hz = 1.0;
  double noise_sigma_m = 20.0;
  // Correlation time of the noise in seconds; 0 draws every sample
  // independently. GPS error drifts rather than jumping per fix.
  double noise_correlation_s = 60.0;
  double speed_mps = 14.0;
  BoundingBox area = kLondonBox;
  double min_route_m = 5000.0;
  std::size_t grid_rows = 60;
  std::size_t grid_cols = 60;
  double deletion_fraction = 0.10;
  // Node jitter as a fraction of the grid spacing.
  double jitter = 0.3;
  // With regions > 1, one road graph of `area`'s extent is built around
  // each of `regions` centers drawn uniformly from `region_spread`, and
  // routes are dealt to regions round-robin.
  std::size_t regions = 1;
  BoundingBox region_spread{36.0, 60.0, -10.0, 30.0};
  std::size_t max_retries = 1000;

  // Throws std::invalid_argument on non-positive rates, counts or a
  // degenerate box.
  void validate() const;
  // Lag-one correlation of consecutive noise offsets.
  double noise_correlation() const;
};

struct RoadGraph {
  std::vector<Point> nodes;
  // Undirected; both directions are stored. Weights are haversine meters.
  std::vector<std::vector<std::pair<std::size_t, double>>> adjacency;
  BoundingBox box;

  std::size_t edge_count() const;
  bool connected() const;
  // Node sequence of a shortest path, empty when unreachable.
  std::vector<std::size_t> shortest_path(std::size_t from, std::size_t to) const;
};

// Jittered rows x cols grid over `box` with a fraction of edges removed,
// never disconnecting the graph. Deterministic per seed.
RoadGraph build_graph(const GenConfig& cfg, const BoundingBox& box, std::uint64_t seed);
RoadGraph build_graph(const GenConfig& cfg);

struct TrajectoryLabel {
  std::size_t route = 0;
  bool reverse = false;

  friend bool operator==(const TrajectoryLabel&, const TrajectoryLabel&) = default;
};

struct Dataset {
  std::vector<Trajectory> trajectories;  // ascending id
  std::vector<Trajectory> queries;       // ascending id, ids after all trajectories
  GroundTruth truth;
  std::map<TrajectoryId, TrajectoryLabel> labels;  // trajectories and queries
  std::vector<std::vector<Point>> routes;
};

// Samples a polyline every `spacing_m` meters from its start, then adds
// isotropic Gaussian noise of `sigma_m` meters to each sample. Consecutive
// offsets follow an AR(1) process with lag-one `correlation`.
std::vector<Point> sample_polyline(const std::vector<Point>& polyline, double spacing_m,
                                   double sigma_m, std::uint64_t seed, double correlation = 0.0);

// num_routes shortest paths of at least min_route_m; per route and
// direction, traj_per_direction indexed trajectories plus one held-out
// query. Relevance = same route and same direction. Trajectory ids are a
// seeded permutation so id order carries no label information.
Dataset generate(const GenConfig& cfg);

// Writes trajectories.txt, queries.txt and truth.csv into `dir`.
void write_dataset(const std::filesystem::path& dir, const Dataset& data);

// Two trajectories that share a road segment and diverge before and after
// it. `shared_*` are the raw point ranges lying on the shared segment.
struct MotifPair {
  Trajectory first;
  Trajectory second;
  PointRange shared_first;
  PointRange shared_second;
};

// Builds `count` pairs of at most `max_points` points each. The shared
// road is at least `shared_m` long; each side enters and leaves it through
// its own branch of at least `branch_m`.
std::vector<MotifPair> generate_motif_pairs(const GenConfig& cfg, std::size_t count,
                                            std::size_t max_points, double shared_m = 1500.0,
                                            double branch_m = 1000.0);

}  // namespace geodabs

#endif  // GEODABS_DATAGEN_H_
