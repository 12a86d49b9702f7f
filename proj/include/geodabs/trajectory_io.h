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

#ifndef GEODABS_TRAJECTORY_IO_H_
#define GEODABS_TRAJECTORY_IO_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "geodabs/trajectory.h"

namespace geodabs {

// Malformed input; `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// One trajectory per line: `id<TAB>lat,lon;lat,lon;...`. Blank lines and
// lines starting with '#' are skipped.
Trajectory parse_trajectory_line(std::string_view line, std::size_t line_no = 0);
std::vector<Trajectory> read_trajectories(std::istream& in);
std::vector<Trajectory> read_trajectories(const std::filesystem::path& path);

// Coordinates are written with 7 decimals (about 1 cm).
void write_trajectory(std::ostream& out, const Trajectory& s);
void write_trajectories(const std::filesystem::path& path, const std::vector<Trajectory>& trajectories);

// query id -> relevant trajectory ids.
using GroundTruth = std::map<TrajectoryId, std::set<TrajectoryId>>;

// `query_id,relevant_id` with a header row.
void write_truth(const std::filesystem::path& path, const GroundTruth& truth);
GroundTruth read_truth(const std::filesystem::path& path);

}  // namespace geodabs

#endif  // GEODABS_TRAJECTORY_IO_H_
