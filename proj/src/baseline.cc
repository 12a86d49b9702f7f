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

#include "geodabs/baseline.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "geodabs/fingerprint.h"
#include "geodabs/term_set.h"

namespace geodabs {

namespace {

constexpr double kInf = std::numeric_limits<double>::max();

void check_non_empty(std::span<const Point> p, std::span<const Point> q) {
  if (p.empty() || q.empty()) throw std::invalid_argument("distance of an empty trajectory");
}

}  // namespace

void DistanceMatrix::reset(std::size_t rows, std::size_t cols, double fill) {
  stride_ = cols + 1;
  cells_.assign((rows + 1) * stride_, fill);
}

double dtw(std::span<const Point> p, std::span<const Point> q) {
  DistanceMatrix work;
  return dtw(p, q, work);
}

double dtw(std::span<const Point> p, std::span<const Point> q, DistanceMatrix& work) {
  check_non_empty(p, q);
  const std::size_t m = p.size(), n = q.size();
  work.reset(m, n, kInf);
  work.at(0, 0) = 0.0;
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      const double best = std::min({work.at(i - 1, j), work.at(i, j - 1), work.at(i - 1, j - 1)});
      work.at(i, j) = haversine(p[i - 1], q[j - 1]) + best;
    }
  }
  return work.at(m, n);
}

double dfd(std::span<const Point> p, std::span<const Point> q) {
  DistanceMatrix work;
  return dfd(p, q, work);
}

double dfd(std::span<const Point> p, std::span<const Point> q, DistanceMatrix& work) {
  check_non_empty(p, q);
  const std::size_t m = p.size(), n = q.size();
  // Row/column 0 act as +inf predecessors; (1,1) is the base case.
  work.reset(m, n, kInf);
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      const double d = haversine(p[i - 1], q[j - 1]);
      if (i == 1 && j == 1) {
        work.at(i, j) = d;
        continue;
      }
      const double best = std::min({work.at(i - 1, j), work.at(i, j - 1), work.at(i - 1, j - 1)});
      work.at(i, j) = std::max(d, best);
    }
  }
  return work.at(m, n);
}

std::string_view method_name(DistanceMethod m) {
  switch (m) {
    case DistanceMethod::kDtw: return "dtw";
    case DistanceMethod::kDfd: return "dfd";
    case DistanceMethod::kJaccard: return "jaccard";
  }
  return "?";
}

DistanceMethod parse_method(std::string_view name) {
  if (name == "dtw") return DistanceMethod::kDtw;
  if (name == "dfd") return DistanceMethod::kDfd;
  if (name == "jaccard") return DistanceMethod::kJaccard;
  throw std::invalid_argument("unknown distance method '" + std::string(name) + "'");
}

Trajectory random_walk(std::size_t length, std::uint64_t seed, Point start) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> turn(-0.3, 0.3);
  constexpr double kStepM = 14.0;
  constexpr double kMetersPerDegree = kEarthRadiusMeters * std::numbers::pi / 180.0;
  Trajectory s;
  s.id = seed;
  s.points.reserve(length);
  double heading = std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng);
  Point p = start;
  for (std::size_t i = 0; i < length; ++i) {
    s.points.push_back(p);
    heading += turn(rng);
    p.lat += kStepM * std::cos(heading) / kMetersPerDegree;
    p.lon += kStepM * std::sin(heading) / (kMetersPerDegree * std::cos(p.lat * std::numbers::pi / 180.0));
  }
  return s;
}

TimingRecord bench_distance(DistanceMethod method, std::size_t length, std::size_t candidates,
                            int repeats, std::uint64_t seed) {
  const Trajectory query = random_walk(length, seed);
  std::vector<Trajectory> pool;
  pool.reserve(candidates);
  for (std::size_t c = 0; c < candidates; ++c) pool.push_back(random_walk(length, seed + 1 + c));

  const FingerprintParams params;
  std::vector<FingerprintSet> sets;
  if (method == DistanceMethod::kJaccard) {
    for (const auto& s : pool) sets.push_back(fingerprint(s, params).to_set());
  }

  using Clock = std::chrono::steady_clock;
  double best = std::numeric_limits<double>::infinity();
  volatile double sink = 0.0;
  DistanceMatrix work;
  for (int r = 0; r < std::max(1, repeats); ++r) {
    const auto start = Clock::now();
    double acc = 0.0;
    switch (method) {
      case DistanceMethod::kDtw:
        for (const auto& c : pool) acc += dtw(query.points, c.points, work);
        break;
      case DistanceMethod::kDfd:
        for (const auto& c : pool) acc += dfd(query.points, c.points, work);
        break;
      case DistanceMethod::kJaccard: {
        const FingerprintSet q = fingerprint(query, params).to_set();
        for (const auto& s : sets) acc += jaccard_distance(q, s);
        break;
      }
    }
    const std::chrono::duration<double, std::milli> elapsed = Clock::now() - start;
    sink = sink + acc;
    best = std::min(best, elapsed.count());
  }
  return {method, length, candidates, best};
}

}  // namespace geodabs
