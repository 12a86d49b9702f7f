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

#ifndef GEODABS_PARALLEL_H_
#define GEODABS_PARALLEL_H_

#include <cstddef>
#include <span>
#include <vector>

#include "geodabs/baseline.h"
#include "geodabs/eval.h"
#include "geodabs/fingerprint.h"
#include "geodabs/index.h"
#include "geodabs/motif.h"

// OpenMP batch kernels. Every kernel has a serial path that is the
// reference implementation; the parallel path must produce identical
// output and is checked against it in tests.

namespace geodabs {

enum class Execution { kSerial, kParallel };

// Caps OpenMP threads for all kernels; n <= 0 restores the default.
void set_thread_limit(int n);
int thread_limit();

std::vector<PreparedTrajectory> prepare_all(std::span<const Trajectory> trajectories,
                                            const FingerprintParams& params,
                                            Execution exec = Execution::kParallel);

std::vector<FingerprintSequence> fingerprint_all(std::span<const Trajectory> trajectories,
                                                 const FingerprintParams& params,
                                                 Execution exec = Execution::kParallel);

// Fingerprints in parallel, then inserts in input order (single writer).
InvertedIndex build_index(std::span<const Trajectory> trajectories, const FingerprintParams& params,
                          Execution exec = Execution::kParallel);

QueryResults query_all(const InvertedIndex& index, std::span<const Trajectory> queries,
                       double max_distance = 1.0, std::size_t limit = kNoLimit,
                       Execution exec = Execution::kParallel);

// DTW or DFD of `query` against each candidate.
std::vector<double> score_candidates(DistanceMethod method, std::span<const Point> query,
                                     std::span<const Trajectory> candidates,
                                     Execution exec = Execution::kParallel);

// Same contract as motif_geodab(); the parallel path splits the outer
// window loop and reduces with the same tie rule.
MotifResult motif_geodab(const FingerprintSequence& first, const FingerprintSequence& second,
                         double length_m, FingerprintDensity density, int k, Execution exec);

}  // namespace geodabs

#endif  // GEODABS_PARALLEL_H_
