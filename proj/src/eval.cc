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

#include "geodabs/eval.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "geodabs/normalize.h"

namespace geodabs {

CellSet geohash_baseline_fingerprints(const Trajectory& s, int depth) {
  const NormalizedTrajectory n = normalize(s, depth);
  std::vector<std::uint64_t> cells;
  cells.reserve(n.cells.size());
  for (const Geohash& c : n.cells) cells.push_back(c.bits);
  return CellSet(std::move(cells));
}

GeohashIndex build_geohash_index(std::span<const Trajectory> trajectories, int depth) {
  GeohashIndex index;
  for (const auto& s : trajectories) index.insert(s.id, geohash_baseline_fingerprints(s, depth));
  return index;
}

RankedResult query_geohash_index(const GeohashIndex& index, const Trajectory& q, int depth,
                                 double max_distance, std::size_t limit) {
  return index.query(geohash_baseline_fingerprints(q, depth), max_distance, limit);
}

QueryResults run_queries(const InvertedIndex& index, std::span<const Trajectory> queries,
                         double max_distance, std::size_t limit) {
  QueryResults out;
  for (const auto& q : queries) out[q.id] = index.query(q, max_distance, limit).results;
  return out;
}

QueryResults run_queries(const GeohashIndex& index, int depth, std::span<const Trajectory> queries,
                         double max_distance, std::size_t limit) {
  QueryResults out;
  for (const auto& q : queries) out[q.id] = query_geohash_index(index, q, depth, max_distance, limit);
  return out;
}

namespace {

void check_covered(const QueryResults& results, const GroundTruth& truth) {
  for (const auto& [q, list] : results) {
    if (!truth.contains(q)) {
      throw std::invalid_argument("query " + std::to_string(q) + " has no ground truth");
    }
  }
}

const RankedResult& results_for(const QueryResults& results, TrajectoryId q) {
  static const RankedResult kEmpty;
  auto it = results.find(q);
  return it == results.end() ? kEmpty : it->second;
}

}  // namespace

std::vector<CurvePoint> pr_curve(const QueryResults& results, const GroundTruth& truth) {
  check_covered(results, truth);
  std::uint64_t relevant_total = 0;
  std::vector<std::pair<double, bool>> pooled;
  for (const auto& [q, relevant] : truth) {
    relevant_total += relevant.size();
    for (const auto& r : results_for(results, q)) pooled.emplace_back(r.distance, relevant.contains(r.id));
  }
  std::vector<CurvePoint> curve;
  if (relevant_total == 0) return curve;
  std::sort(pooled.begin(), pooled.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  // Sweep the distance threshold; equal distances enter together.
  std::uint64_t tp = 0, retrieved = 0;
  for (std::size_t i = 0; i < pooled.size();) {
    std::uint64_t hits = 0;
    std::size_t j = i;
    for (; j < pooled.size() && pooled[j].first == pooled[i].first; ++j) hits += pooled[j].second;
    retrieved += j - i;
    i = j;
    if (hits == 0) continue;
    tp += hits;
    curve.push_back({static_cast<double>(tp) / static_cast<double>(relevant_total),
                     static_cast<double>(tp) / static_cast<double>(retrieved)});
  }
  return curve;
}

double interpolated_precision(std::span<const CurvePoint> pr, double recall) {
  double best = 0.0;
  for (const auto& p : pr) {
    if (p.x >= recall) best = std::max(best, p.y);
  }
  return best;
}

double pr_area(std::span<const CurvePoint> pr) {
  double area = 0.0, prev = 0.0;
  for (const auto& p : pr) {
    area += (p.x - prev) * p.y;
    prev = p.x;
  }
  return area;
}

double mean_precision_at(const QueryResults& results, const GroundTruth& truth, std::size_t n) {
  check_covered(results, truth);
  if (truth.empty() || n == 0) return 0.0;
  double sum = 0.0;
  for (const auto& [q, relevant] : truth) {
    const RankedResult& list = results_for(results, q);
    std::size_t hits = 0;
    for (std::size_t r = 0; r < std::min(n, list.size()); ++r) hits += relevant.contains(list[r].id);
    sum += static_cast<double>(hits) / static_cast<double>(n);
  }
  return sum / static_cast<double>(truth.size());
}

RocCurve roc_auc(const QueryResults& results, const GroundTruth& truth, std::size_t universe_size) {
  check_covered(results, truth);
  struct Scored {
    double distance;
    bool relevant;
  };
  std::vector<Scored> pooled;
  std::uint64_t positives = 0, negatives = 0;
  for (const auto& [q, relevant] : truth) {
    if (relevant.size() > universe_size) throw std::invalid_argument("universe smaller than relevant set");
    positives += relevant.size();
    negatives += universe_size - relevant.size();
    for (const auto& r : results_for(results, q)) pooled.push_back({r.distance, relevant.contains(r.id)});
  }
  RocCurve roc;
  if (positives == 0 || negatives == 0) {
    throw std::invalid_argument("ROC needs both relevant and non-relevant items");
  }
  std::sort(pooled.begin(), pooled.end(), [](const Scored& a, const Scored& b) { return a.distance < b.distance; });
  const double p = static_cast<double>(positives), n = static_cast<double>(negatives);
  std::uint64_t tp = 0, fp = 0;
  roc.points.push_back({0.0, 0.0});
  for (std::size_t i = 0; i < pooled.size();) {
    std::size_t j = i;
    while (j < pooled.size() && pooled[j].distance == pooled[i].distance) {
      (pooled[j].relevant ? tp : fp) += 1;
      ++j;
    }
    roc.points.push_back({static_cast<double>(fp) / n, static_cast<double>(tp) / p});
    i = j;
  }
  // Everything never retrieved ties at +infinity.
  if (roc.points.back().x != 1.0 || roc.points.back().y != 1.0) roc.points.push_back({1.0, 1.0});
  for (std::size_t i = 1; i < roc.points.size(); ++i) {
    const auto& a = roc.points[i - 1];
    const auto& b = roc.points[i];
    roc.auc += (b.x - a.x) * (a.y + b.y) / 2.0;
  }
  return roc;
}

std::vector<SweepCurve> normalization_sweep(std::span<const Trajectory> trajectories,
                                            std::span<const Trajectory> queries,
                                            const GroundTruth& truth, std::span<const int> depths,
                                            const FingerprintParams& base) {
  if (depths.empty()) throw std::invalid_argument("normalization sweep needs at least one depth");
  std::vector<SweepCurve> out;
  for (int depth : depths) {
    FingerprintParams params = base;
    params.depth = depth;
    InvertedIndex index(params);
    for (const auto& s : trajectories) index.insert(s);
    SweepCurve curve;
    curve.depth = depth;
    curve.pr = pr_curve(run_queries(index, queries), truth);
    curve.area = pr_area(curve.pr);
    out.push_back(std::move(curve));
  }
  return out;
}

namespace {

template <typename QueryFn>
QueryBenchRow time_queries(std::string name, std::size_t density, std::span<const Trajectory> queries,
                           QueryFn&& run) {
  using Clock = std::chrono::steady_clock;
  std::vector<double> ms;
  ms.reserve(queries.size());
  for (const auto& q : queries) {
    const auto start = Clock::now();
    run(q);
    ms.push_back(std::chrono::duration<double, std::milli>(Clock::now() - start).count());
  }
  QueryBenchRow row{std::move(name), density, 0.0, 0.0};
  if (ms.empty()) return row;
  double sum = 0.0;
  for (double v : ms) sum += v;
  row.mean_ms = sum / static_cast<double>(ms.size());
  std::sort(ms.begin(), ms.end());
  const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(ms.size())));
  row.p95_ms = ms[std::max<std::size_t>(rank, 1) - 1];
  return row;
}

}  // namespace

std::vector<QueryBenchRow> query_bench(std::span<const Trajectory> trajectories,
                                       std::span<const Trajectory> queries,
                                       std::span<const std::size_t> densities,
                                       const FingerprintParams& params) {
  std::vector<QueryBenchRow> rows;
  if (queries.empty()) return rows;
  volatile std::size_t sink = 0;
  for (std::size_t density : densities) {
    const auto subset = trajectories.first(std::min(density, trajectories.size()));
    InvertedIndex geodab(params);
    for (const auto& s : subset) geodab.insert(s);
    const GeohashIndex geohash = build_geohash_index(subset, params.depth);
    rows.push_back(time_queries("geodab", subset.size(), queries, [&](const Trajectory& q) {
      sink = sink + geodab.query(q, 1.0).results.size();
    }));
    rows.push_back(time_queries("geohash", subset.size(), queries, [&](const Trajectory& q) {
      sink = sink + query_geohash_index(geohash, q, params.depth).size();
    }));
  }
  return rows;
}

}  // namespace geodabs
