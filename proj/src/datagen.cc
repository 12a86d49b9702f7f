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

#include "geodabs/datagen.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <span>
#include <numbers>
#include <numeric>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>

namespace geodabs {

namespace {

constexpr double kMetersPerDegree = kEarthRadiusMeters * std::numbers::pi / 180.0;

// Offsets a point by (north, east) meters on the local tangent plane.
Point offset(const Point& p, double north_m, double east_m) {
  const double lat = p.lat + north_m / kMetersPerDegree;
  const double lon = p.lon + east_m / (kMetersPerDegree * std::cos(p.lat * std::numbers::pi / 180.0));
  return {std::clamp(lat, -90.0, 90.0), lon};
}

std::vector<Point> to_points(const RoadGraph& g, const std::vector<std::size_t>& path) {
  std::vector<Point> out;
  out.reserve(path.size());
  for (std::size_t n : path) out.push_back(g.nodes[n]);
  return out;
}

// Derived seeds for independent streams.
std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

double GenConfig::noise_correlation() const {
  return noise_correlation_s > 0.0 ? std::exp(-1.0 / (sample_hz * noise_correlation_s)) : 0.0;
}

bool BoundingBox::valid() const {
  return std::isfinite(lat_min) && std::isfinite(lat_max) && std::isfinite(lon_min) &&
         std::isfinite(lon_max) && lat_min < lat_max && lon_min < lon_max && lat_min >= -90.0 &&
         lat_max <= 90.0 && lon_min >= -180.0 && lon_max <= 180.0;
}

BoundingBox BoundingBox::recentered(Point c) const {
  const double half_lat = (lat_max - lat_min) / 2.0;
  const double half_lon = (lon_max - lon_min) / 2.0;
  return {c.lat - half_lat, c.lat + half_lat, c.lon - half_lon, c.lon + half_lon};
}

void GenConfig::validate() const {
  if (num_routes == 0) throw std::invalid_argument("need at least one route");
  if (traj_per_direction == 0) throw std::invalid_argument("need at least one trajectory per direction");
  if (!(sample_hz > 0.0)) throw std::invalid_argument("sample rate must be positive");
  if (!(speed_mps > 0.0)) throw std::invalid_argument("speed must be positive");
  if (!(noise_sigma_m >= 0.0)) throw std::invalid_argument("noise must be non-negative");
  if (!(min_route_m >= 0.0)) throw std::invalid_argument("minimum route length must be non-negative");
  if (!area.valid()) throw std::invalid_argument("degenerate area box");
  if (grid_rows < 2 || grid_cols < 2) throw std::invalid_argument("road grid needs at least 2x2 nodes");
  if (!(deletion_fraction >= 0.0 && deletion_fraction < 1.0)) {
    throw std::invalid_argument("deletion fraction must be in [0, 1)");
  }
  if (!(noise_correlation_s >= 0.0)) throw std::invalid_argument("noise correlation time must be non-negative");
  if (regions == 0) throw std::invalid_argument("need at least one region");
  if (regions > 1 && !region_spread.valid()) throw std::invalid_argument("degenerate region spread box");
}

std::size_t RoadGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& adj : adjacency) n += adj.size();
  return n / 2;
}

bool RoadGraph::connected() const {
  if (nodes.empty()) return true;
  std::vector<bool> seen(nodes.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t n = stack.back();
    stack.pop_back();
    for (const auto& [m, w] : adjacency[n]) {
      if (!seen[m]) {
        seen[m] = true;
        ++count;
        stack.push_back(m);
      }
    }
  }
  return count == nodes.size();
}

std::vector<std::size_t> RoadGraph::shortest_path(std::size_t from, std::size_t to) const {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(nodes.size(), inf);
  std::vector<std::size_t> prev(nodes.size(), nodes.size());
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  dist[from] = 0.0;
  open.push({0.0, from});
  while (!open.empty()) {
    const auto [d, n] = open.top();
    open.pop();
    if (d > dist[n]) continue;
    if (n == to) break;
    for (const auto& [m, w] : adjacency[n]) {
      if (d + w < dist[m]) {
        dist[m] = d + w;
        prev[m] = n;
        open.push({dist[m], m});
      }
    }
  }
  if (dist[to] == inf) return {};
  std::vector<std::size_t> path;
  for (std::size_t n = to; n != from; n = prev[n]) path.push_back(n);
  path.push_back(from);
  std::reverse(path.begin(), path.end());
  return path;
}

RoadGraph build_graph(const GenConfig& cfg, const BoundingBox& box, std::uint64_t seed) {
  cfg.validate();
  if (!box.valid()) throw std::invalid_argument("degenerate area box");
  std::mt19937_64 rng(seed);
  RoadGraph g;
  g.box = box;
  const std::size_t rows = cfg.grid_rows, cols = cfg.grid_cols;
  const double dlat = (box.lat_max - box.lat_min) / static_cast<double>(rows - 1);
  const double dlon = (box.lon_max - box.lon_min) / static_cast<double>(cols - 1);
  std::uniform_real_distribution<double> jitter(-cfg.jitter / 2.0, cfg.jitter / 2.0);
  g.nodes.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double lat = box.lat_min + dlat * (static_cast<double>(r) + jitter(rng));
      const double lon = box.lon_min + dlon * (static_cast<double>(c) + jitter(rng));
      g.nodes.push_back({std::clamp(lat, box.lat_min, box.lat_max),
                         std::clamp(lon, box.lon_min, std::min(box.lon_max, std::nextafter(180.0, 0.0)))});
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t n = r * cols + c;
      if (c + 1 < cols) edges.emplace_back(n, n + 1);
      if (r + 1 < rows) edges.emplace_back(n, n + cols);
    }
  }
  g.adjacency.assign(g.nodes.size(), {});
  auto link = [&](std::size_t a, std::size_t b) {
    const double w = haversine(g.nodes[a], g.nodes[b]);
    g.adjacency[a].emplace_back(b, w);
    g.adjacency[b].emplace_back(a, w);
  };
  for (const auto& [a, b] : edges) link(a, b);

  auto unlink = [&](std::size_t a, std::size_t b) {
    std::erase_if(g.adjacency[a], [b](const auto& e) { return e.first == b; });
    std::erase_if(g.adjacency[b], [a](const auto& e) { return e.first == a; });
  };
  std::shuffle(edges.begin(), edges.end(), rng);
  const auto target = static_cast<std::size_t>(std::floor(cfg.deletion_fraction * static_cast<double>(edges.size())));
  std::size_t removed = 0;
  for (const auto& [a, b] : edges) {
    if (removed == target) break;
    unlink(a, b);
    if (g.connected()) {
      ++removed;
    } else {
      link(a, b);
    }
  }
  return g;
}

RoadGraph build_graph(const GenConfig& cfg) { return build_graph(cfg, cfg.area, mix(cfg.seed, 0)); }

std::vector<Point> sample_polyline(const std::vector<Point>& polyline, double spacing_m,
                                   double sigma_m, std::uint64_t seed, double correlation) {
  if (polyline.empty()) return {};
  if (!(correlation >= 0.0 && correlation < 1.0)) throw std::invalid_argument("noise correlation must be in [0, 1)");
  if (!(spacing_m > 0.0)) throw std::invalid_argument("sample spacing must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<Point> out;
  std::size_t seg = 0;
  double seg_start = 0.0;
  double seg_len = polyline.size() > 1 ? haversine(polyline[0], polyline[1]) : 0.0;
  const double total = metric_length(polyline);
  double north = 0.0, east = 0.0;
  for (std::size_t i = 0;; ++i) {
    const double s = static_cast<double>(i) * spacing_m;
    if (s > total) break;
    while (seg + 2 < polyline.size() && s > seg_start + seg_len) {
      seg_start += seg_len;
      ++seg;
      seg_len = haversine(polyline[seg], polyline[seg + 1]);
    }
    Point p = polyline[seg];
    if (seg + 1 < polyline.size() && seg_len > 0.0) {
      const double f = std::clamp((s - seg_start) / seg_len, 0.0, 1.0);
      const Point& a = polyline[seg];
      const Point& b = polyline[seg + 1];
      p = {a.lat + f * (b.lat - a.lat), a.lon + f * (b.lon - a.lon)};
    }
    if (sigma_m > 0.0) {
      // AR(1) offsets keep every sample's marginal at N(0, sigma^2).
      const double fresh = i == 0 ? 1.0 : std::sqrt(1.0 - correlation * correlation);
      const double keep = i == 0 ? 0.0 : correlation;
      north = keep * north + fresh * sigma_m * noise(rng);
      east = keep * east + fresh * sigma_m * noise(rng);
      p = offset(p, north, east);
    }
    out.push_back(make_point(p.lat, p.lon >= 180.0 ? p.lon - 360.0 : p.lon));
  }
  return out;
}

Dataset generate(const GenConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(mix(cfg.seed, 1));

  std::vector<RoadGraph> graphs;
  if (cfg.regions == 1) {
    graphs.push_back(build_graph(cfg));
  } else {
    std::uniform_real_distribution<double> lat(cfg.region_spread.lat_min, cfg.region_spread.lat_max);
    std::uniform_real_distribution<double> lon(cfg.region_spread.lon_min, cfg.region_spread.lon_max);
    for (std::size_t r = 0; r < cfg.regions; ++r) {
      const Point c{lat(rng), lon(rng)};
      BoundingBox box = cfg.area.recentered(c);
      if (!box.valid()) throw std::invalid_argument("region box leaves the valid coordinate range");
      graphs.push_back(build_graph(cfg, box, mix(cfg.seed, 100 + r)));
    }
  }

  Dataset data;
  for (std::size_t r = 0; r < cfg.num_routes; ++r) {
    const RoadGraph& g = graphs[r % graphs.size()];
    std::uniform_int_distribution<std::size_t> pick(0, g.nodes.size() - 1);
    std::vector<Point> route;
    for (std::size_t attempt = 0;; ++attempt) {
      if (attempt == cfg.max_retries) {
        throw std::runtime_error("could not find a route of at least " +
                                 std::to_string(cfg.min_route_m) + " m after " +
                                 std::to_string(cfg.max_retries) + " attempts");
      }
      const std::size_t a = pick(rng), b = pick(rng);
      if (a == b) continue;
      const auto path = g.shortest_path(a, b);
      if (path.empty()) continue;
      route = to_points(g, path);
      if (metric_length(route) >= cfg.min_route_m) break;
    }
    data.routes.push_back(std::move(route));
  }

  const std::size_t per_class = cfg.traj_per_direction;
  const std::size_t total = cfg.num_routes * 2 * per_class;
  std::vector<TrajectoryId> ids(total);
  std::iota(ids.begin(), ids.end(), TrajectoryId{0});
  std::shuffle(ids.begin(), ids.end(), rng);

  const double spacing = cfg.speed_mps / cfg.sample_hz;
  const double rho = cfg.noise_correlation();
  std::size_t next = 0;
  TrajectoryId next_query = total;
  data.trajectories.resize(total);
  for (std::size_t r = 0; r < cfg.num_routes; ++r) {
    for (bool reverse : {false, true}) {
      std::vector<Point> polyline = data.routes[r];
      if (reverse) std::reverse(polyline.begin(), polyline.end());
      const TrajectoryLabel label{r, reverse};
      std::set<TrajectoryId> members;
      for (std::size_t c = 0; c <= per_class; ++c) {
        const std::uint64_t stream = 1000 + (r * 2 + (reverse ? 1 : 0)) * (per_class + 1) + c;
        Trajectory s;
        s.points = sample_polyline(polyline, spacing, cfg.noise_sigma_m, mix(cfg.seed, stream), rho);
        if (c < per_class) {
          s.id = ids[next++];
          members.insert(s.id);
          data.labels[s.id] = label;
          data.trajectories[s.id] = std::move(s);
        } else {
          s.id = next_query++;
          data.labels[s.id] = label;
          data.truth[s.id] = members;
          data.queries.push_back(std::move(s));
        }
      }
    }
  }
  return data;
}

void write_dataset(const std::filesystem::path& dir, const Dataset& data) {
  std::filesystem::create_directories(dir);
  write_trajectories(dir / "trajectories.txt", data.trajectories);
  write_trajectories(dir / "queries.txt", data.queries);
  write_truth(dir / "truth.csv", data.truth);
}

std::vector<MotifPair> generate_motif_pairs(const GenConfig& cfg, std::size_t count,
                                            std::size_t max_points, double shared_m,
                                            double branch_m) {
  cfg.validate();
  if (!(shared_m > 0.0) || !(branch_m > 0.0)) {
    throw std::invalid_argument("motif segment lengths must be positive");
  }
  const RoadGraph g = build_graph(cfg);
  std::mt19937_64 rng(mix(cfg.seed, 2));
  std::uniform_int_distribution<std::size_t> pick(0, g.nodes.size() - 1);
  const double spacing = cfg.speed_mps / cfg.sample_hz;

  auto weight = [&](std::size_t a, std::size_t b) {
    for (const auto& [m, w] : g.adjacency[a]) {
      if (m == b) return w;
    }
    return 0.0;
  };
  // Random self-avoiding walk of at least `length` meters leaving `from`
  // through `first`; empty when it gets stuck.
  auto walk = [&](std::size_t from, std::size_t first, const std::set<std::size_t>& avoid, double length) {
    std::vector<std::size_t> nodes{from, first};
    std::set<std::size_t> used(avoid.begin(), avoid.end());
    used.insert(first);
    double len = weight(from, first);
    while (len < length) {
      std::vector<std::size_t> next;
      for (const auto& [m, w] : g.adjacency[nodes.back()]) {
        if (!used.contains(m)) next.push_back(m);
      }
      if (next.empty()) return std::vector<std::size_t>{};
      const std::size_t m = next[std::uniform_int_distribution<std::size_t>(0, next.size() - 1)(rng)];
      len += weight(nodes.back(), m);
      used.insert(m);
      nodes.push_back(m);
    }
    return nodes;
  };

  std::vector<MotifPair> pairs;
  std::size_t attempts = 0;
  while (pairs.size() < count) {
    if (++attempts > cfg.max_retries * std::max<std::size_t>(count, 1)) {
      throw std::runtime_error("could not build enough motif pairs");
    }
    const auto path = g.shortest_path(pick(rng), pick(rng));
    std::vector<std::size_t> shared;
    double shared_len = 0.0;
    for (std::size_t i = 0; i < path.size() && (shared.empty() || shared_len < shared_m); ++i) {
      if (!shared.empty()) shared_len += weight(shared.back(), path[i]);
      shared.push_back(path[i]);
    }
    if (shared_len < shared_m) continue;
    std::set<std::size_t> taken(shared.begin(), shared.end());

    // Entry and exit branches, distinct per side.
    std::vector<std::size_t> branch[2][2];
    bool ok = true;
    for (int end = 0; end < 2 && ok; ++end) {
      const std::size_t node = end == 0 ? shared.front() : shared.back();
      std::vector<std::size_t> firsts;
      for (const auto& [m, w] : g.adjacency[node]) {
        if (!taken.contains(m)) firsts.push_back(m);
      }
      std::shuffle(firsts.begin(), firsts.end(), rng);
      if (firsts.size() < 2) {
        ok = false;
        break;
      }
      for (int side = 0; side < 2 && ok; ++side) {
        branch[end][side] = walk(node, firsts[static_cast<std::size_t>(side)], taken, branch_m);
        ok = !branch[end][side].empty();
        if (ok) taken.insert(branch[end][side].begin() + 1, branch[end][side].end());
      }
    }
    if (!ok) continue;

    MotifPair pair;
    const std::uint64_t base = 5000 + 2 * pairs.size();
    for (int side = 0; side < 2; ++side) {
      std::vector<std::size_t> nodes(branch[0][side].rbegin(), branch[0][side].rend());
      nodes.insert(nodes.end(), shared.begin() + 1, shared.end());
      nodes.insert(nodes.end(), branch[1][side].begin() + 1, branch[1][side].end());
      const std::vector<Point> polyline = to_points(g, nodes);
      const double lead = metric_length(std::span(polyline).first(branch[0][side].size()));
      std::vector<Point> pts = sample_polyline(polyline, spacing, cfg.noise_sigma_m, mix(cfg.seed, base + side),
                                               cfg.noise_correlation());
      PointRange range{static_cast<std::size_t>(std::ceil(lead / spacing)),
                       static_cast<std::size_t>(std::floor((lead + shared_len) / spacing)) + 1};
      range.end = std::min(range.end, pts.size());
      // Trim evenly around the shared part to respect max_points.
      while (pts.size() > max_points) {
        const std::size_t before = range.start;
        const std::size_t after = pts.size() - range.end;
        if (after >= before && after > 0) {
          pts.pop_back();
        } else if (before > 0) {
          pts.erase(pts.begin());
          --range.start;
          --range.end;
        } else {
          pts.pop_back();
          range.end = std::min(range.end, pts.size());
        }
      }
      Trajectory s{static_cast<TrajectoryId>(2 * pairs.size() + static_cast<std::size_t>(side)), std::move(pts)};
      if (side == 0) {
        pair.first = std::move(s);
        pair.shared_first = range;
      } else {
        pair.second = std::move(s);
        pair.shared_second = range;
      }
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

}  // namespace geodabs
