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

#include "geodabs/parallel.h"

#include <omp.h>

#include <exception>
#include <limits>
#include <string>
#include <stdexcept>
#include <utility>

namespace geodabs {

namespace {

int g_default_threads = 0;

bool parallel(Execution exec) { return exec == Execution::kParallel; }

std::ptrdiff_t ssize(std::size_t n) { return static_cast<std::ptrdiff_t>(n); }

}  // namespace

void set_thread_limit(int n) {
  if (g_default_threads == 0) g_default_threads = omp_get_max_threads();
  omp_set_num_threads(n > 0 ? n : g_default_threads);
}

int thread_limit() { return omp_get_max_threads(); }

std::vector<PreparedTrajectory> prepare_all(std::span<const Trajectory> trajectories,
                                            const FingerprintParams& params, Execution exec) {
  params.validate();
  std::vector<PreparedTrajectory> out(trajectories.size());
  const std::ptrdiff_t n = ssize(trajectories.size());
  // Exceptions may not leave an OpenMP region; carry the first one out.
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 16) if (parallel(exec))
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = prepare(trajectories[static_cast<std::size_t>(i)], params);
    } catch (...) {
#pragma omp critical(geodabs_prepare_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

std::vector<FingerprintSequence> fingerprint_all(std::span<const Trajectory> trajectories,
                                                 const FingerprintParams& params, Execution exec) {
  params.validate();
  std::vector<FingerprintSequence> out(trajectories.size());
  const std::ptrdiff_t n = ssize(trajectories.size());
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 16) if (parallel(exec))
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = fingerprint(trajectories[static_cast<std::size_t>(i)], params);
    } catch (...) {
#pragma omp critical(geodabs_fingerprint_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

InvertedIndex build_index(std::span<const Trajectory> trajectories, const FingerprintParams& params,
                          Execution exec) {
  InvertedIndex index(params);
  for (auto& p : prepare_all(trajectories, params, exec)) {
    if (index.contains(p.id)) {
      throw std::invalid_argument("duplicate trajectory id " + std::to_string(p.id));
    }
    index.insert(std::move(p));
  }
  return index;
}

QueryResults query_all(const InvertedIndex& index, std::span<const Trajectory> queries,
                       double max_distance, std::size_t limit, Execution exec) {
  if (!(max_distance >= 0.0 && max_distance <= 1.0)) {
    throw std::invalid_argument("max distance must be in [0, 1]");
  }
  std::vector<RankedResult> lists(queries.size());
  const std::ptrdiff_t n = ssize(queries.size());
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 4) if (parallel(exec))
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      lists[static_cast<std::size_t>(i)] =
          index.query(queries[static_cast<std::size_t>(i)], max_distance, limit).results;
    } catch (...) {
#pragma omp critical(geodabs_query_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  QueryResults out;
  for (std::size_t i = 0; i < queries.size(); ++i) out[queries[i].id] = std::move(lists[i]);
  return out;
}

std::vector<double> score_candidates(DistanceMethod method, std::span<const Point> query,
                                     std::span<const Trajectory> candidates, Execution exec) {
  if (method == DistanceMethod::kJaccard) {
    throw std::invalid_argument("score_candidates computes DTW or DFD only");
  }
  if (query.empty()) throw std::invalid_argument("distance of an empty trajectory");
  for (const auto& c : candidates) {
    if (c.points.empty()) throw std::invalid_argument("distance of an empty trajectory");
  }
  std::vector<double> out(candidates.size());
  const std::ptrdiff_t n = ssize(candidates.size());
#pragma omp parallel if (parallel(exec))
  {
    DistanceMatrix work;
#pragma omp for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto& c = candidates[static_cast<std::size_t>(i)].points;
      out[static_cast<std::size_t>(i)] =
          method == DistanceMethod::kDtw ? dtw(query, c, work) : dfd(query, c, work);
    }
  }
  return out;
}

MotifResult motif_geodab(const FingerprintSequence& first, const FingerprintSequence& second,
                         double length_m, FingerprintDensity density, int k, Execution exec) {
  if (!parallel(exec)) return motif_geodab(first, second, length_m, density, k);
  const std::size_t f = motif_fingerprint_count(length_m, density);
  if (f == 0 || first.size() < f || second.size() < f) {
    // Let the reference produce the diagnostic.
    return motif_geodab(first, second, length_m, density, k);
  }
  const auto a = window_sets(first, f);
  const auto b = window_sets(second, f);
  struct Best {
    double d = std::numeric_limits<double>::infinity();
    std::size_t i = 0, j = 0;
  };
  // Each row keeps its own best; rows are reduced in order so the earliest
  // (i, j) wins ties exactly as in the serial scan.
  std::vector<Best> rows(a.size());
  const std::ptrdiff_t n = ssize(a.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    Best best;
    best.i = static_cast<std::size_t>(i);
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double d = jaccard_distance(a[static_cast<std::size_t>(i)], b[j]);
      if (d < best.d) {
        best.d = d;
        best.j = j;
      }
    }
    rows[static_cast<std::size_t>(i)] = best;
  }
  Best best;
  for (const Best& r : rows) {
    if (r.d < best.d) best = r;
  }
  return {window_range(first, best.i, f, k), window_range(second, best.j, f, k), best.d};
}

}  // namespace geodabs
