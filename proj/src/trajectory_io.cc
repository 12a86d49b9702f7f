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

#include "geodabs/trajectory_io.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "geodabs/geo.h"

namespace geodabs {

namespace {

template <typename T>
T parse_number(std::string_view text, std::size_t line_no, const char* what) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw ParseError(line_no, std::string("bad ") + what + " '" + std::string(text) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool skippable(std::string_view line) {
  line = trim(line);
  return line.empty() || line.front() == '#';
}

}  // namespace

Trajectory parse_trajectory_line(std::string_view line, std::size_t line_no) {
  line = trim(line);
  const auto tab = line.find('\t');
  if (tab == std::string_view::npos) throw ParseError(line_no, "missing tab after trajectory id");
  Trajectory s;
  s.id = parse_number<TrajectoryId>(trim(line.substr(0, tab)), line_no, "trajectory id");
  std::string_view rest = line.substr(tab + 1);
  while (!rest.empty()) {
    const auto semi = rest.find(';');
    const std::string_view pair = trim(rest.substr(0, semi));
    rest = semi == std::string_view::npos ? std::string_view{} : rest.substr(semi + 1);
    if (pair.empty()) continue;
    const auto comma = pair.find(',');
    if (comma == std::string_view::npos) throw ParseError(line_no, "point without comma");
    const double lat = parse_number<double>(trim(pair.substr(0, comma)), line_no, "latitude");
    const double lon = parse_number<double>(trim(pair.substr(comma + 1)), line_no, "longitude");
    try {
      s.points.push_back(make_point(lat, lon));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (s.points.empty()) throw ParseError(line_no, "trajectory has no points");
  return s;
}

std::vector<Trajectory> read_trajectories(std::istream& in) {
  std::vector<Trajectory> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    out.push_back(parse_trajectory_line(line, line_no));
  }
  return out;
}

std::vector<Trajectory> read_trajectories(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_trajectories(in);
}

void write_trajectory(std::ostream& out, const Trajectory& s) {
  out << s.id << '\t';
  char buf[64];
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const int n = std::snprintf(buf, sizeof(buf), "%s%.7f,%.7f", i == 0 ? "" : ";",
                                s.points[i].lat, s.points[i].lon);
    out.write(buf, n);
  }
  out << '\n';
}

void write_trajectories(const std::filesystem::path& path, const std::vector<Trajectory>& trajectories) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  for (const auto& s : trajectories) write_trajectory(out, s);
}

void write_truth(const std::filesystem::path& path, const GroundTruth& truth) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << "query_id,relevant_id\n";
  for (const auto& [q, ids] : truth) {
    for (TrajectoryId id : ids) out << q << ',' << id << '\n';
  }
}

GroundTruth read_truth(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  GroundTruth truth;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view v = trim(line);
    if (v.empty() || v.front() == '#' || (line_no == 1 && v.starts_with("query_id"))) continue;
    const auto comma = v.find(',');
    if (comma == std::string_view::npos) throw ParseError(line_no, "truth row needs two columns");
    const auto q = parse_number<TrajectoryId>(trim(v.substr(0, comma)), line_no, "query id");
    const auto r = parse_number<TrajectoryId>(trim(v.substr(comma + 1)), line_no, "relevant id");
    truth[q].insert(r);
  }
  return truth;
}

}  // namespace geodabs
