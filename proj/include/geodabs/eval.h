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

#ifndef GEODABS_EVAL_H_
#define GEODABS_EVAL_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "geodabs/fingerprint.h"
#include "geodabs/index.h"
#include "geodabs/term_set.h"
#include "geodabs/trajectory.h"
#include "geodabs/trajectory_io.h"

namespace geodabs {

// Ranked result list per query id.
using QueryResults = std::map<TrajectoryId, RankedResult>;

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  double precision() const { return tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp); }
  double recall() const { return tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn); }
  double specificity() const { return fp + tn == 0 ? 0.0 : static_cast<double>(tn) / static_cast<double>(fp + tn); }
};

// PR: x = recall, y = precision. ROC: x = 1 - specificity, y = sensitivity.
struct CurvePoint {
  double x = 0.0;
  double y = 0.0;
};

// Order-insensitive comparator: the distinct normalized cells of `s`.
CellSet geohash_baseline_fingerprints(const Trajectory& s, int depth);

using GeohashIndex = PostingIndex<std::uint64_t>;
GeohashIndex build_geohash_index(std::span<const Trajectory> trajectories, int depth);
RankedResult query_geohash_index(const GeohashIndex& index, const Trajectory& q, int depth,
                                 double max_distance = 1.0, std::size_t limit = kNoLimit);

// Runs every query against the index sequentially.
QueryResults run_queries(const InvertedIndex& index, std::span<const Trajectory> queries,
                         double max_distance = 1.0, std::size_t limit = kNoLimit);
QueryResults run_queries(const GeohashIndex& index, int depth, std::span<const Trajectory> queries,
                         double max_distance = 1.0, std::size_t limit = kNoLimit);

// Micro-averaged PR curve: the results of all queries are pooled and the
// distance threshold is swept upwards, equal distances entering together. A
// point is emitted whenever relevant items are retrieved. Queries in `truth` with no
// results count as missed. Throws std::invalid_argument when a query in
// `results` is absent from `truth`.
std::vector<CurvePoint> pr_curve(const QueryResults& results, const GroundTruth& truth);

// Highest precision at recall >= `recall`; 0 when that recall is never
// reached.
double interpolated_precision(std::span<const CurvePoint> pr, double recall);

// Step-wise area under a PR curve (sum of recall increments times
// precision).
double pr_area(std::span<const CurvePoint> pr);

// Mean over queries of the fraction of the top `n` results that are
// relevant (missing ranks count as non-relevant).
double mean_precision_at(const QueryResults& results, const GroundTruth& truth, std::size_t n);

struct RocCurve {
  std::vector<CurvePoint> points;
  double auc = 0.0;
};

// ROC over the full retrieval universe of `universe_size` trajectories per
// query: retrieved items are scored by distance (lower ranks first),
// everything not retrieved ties at +infinity. Ties form a single step. AUC
// by the trapezoid rule.
RocCurve roc_auc(const QueryResults& results, const GroundTruth& truth, std::size_t universe_size);

struct SweepCurve {
  int depth = 0;
  std::vector<CurvePoint> pr;
  double area = 0.0;
};

// One index per normalization depth; all other parameters from `base`.
// Throws std::invalid_argument on an empty depth list.
std::vector<SweepCurve> normalization_sweep(std::span<const Trajectory> trajectories,
                                            std::span<const Trajectory> queries,
                                            const GroundTruth& truth, std::span<const int> depths,
                                            const FingerprintParams& base = {});

struct QueryBenchRow {
  std::string index;  // "geodab" or "geohash"
  std::size_t density = 0;  // indexed trajectories
  double mean_ms = 0.0;
  double p95_ms = 0.0;
};

// End-to-end query latency for geodab and geohash-cell indexes built over
// the first `d` trajectories, for each d in `densities`. Queries run
// sequentially.
std::vector<QueryBenchRow> query_bench(std::span<const Trajectory> trajectories,
                                       std::span<const Trajectory> queries,
                                       std::span<const std::size_t> densities,
                                       const FingerprintParams& params = {});

}  // namespace geodabs

#endif  // GEODABS_EVAL_H_
