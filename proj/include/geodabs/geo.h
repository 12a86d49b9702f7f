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

#ifndef GEODABS_GEO_H_
#define GEODABS_GEO_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace geodabs {

// Mean earth radius used by the spherical ground distance.
inline constexpr double kEarthRadiusMeters = 6371000.0;

// Deepest geohash we produce. 36 bits leave room for a 16-bit prefix plus a
// suffix inside a 32-bit geodab and match the default normalization depth.
inline constexpr int kMaxGeohashDepth = 36;

// A latitude/longitude sample in decimal degrees.
struct Point {
  double lat = 0.0;
  double lon = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

// Builds a validated point. Throws std::invalid_argument on non-finite or
// out-of-range coordinates. A longitude of exactly +180 wraps to -180.
Point make_point(double lat, double lon);

bool is_valid(const Point& p);

// Great-circle distance in meters (haversine on a sphere of radius
// kEarthRadiusMeters).
double haversine(const Point& a, const Point& b);

// A cell on the z-order curve. The first bisection is stored in the most
// significant of the `depth` valid bits; bits above `depth` are zero.
struct Geohash {
  std::uint64_t bits = 0;
  int depth = 0;

  friend bool operator==(const Geohash&, const Geohash&) = default;
  friend auto operator<=>(const Geohash&, const Geohash&) = default;
};

struct Cell {
  double lat_min = -90.0;
  double lat_max = 90.0;
  double lon_min = -180.0;
  double lon_max = 180.0;

  Point center() const {
    return {(lat_min + lat_max) / 2.0, (lon_min + lon_max) / 2.0};
  }
  // Half-open on both axes, except that the north pole belongs to the
  // top row so every valid point has a cell.
  bool contains(const Point& p) const;
};

// Odd bits (1-based) split longitude, even bits split latitude. Each split
// maps [min, mid) to 0 and [mid, max) to 1. Throws on depth outside [0, 36].
Geohash geohash_encode(const Point& p, int depth);

Cell geohash_decode(const Geohash& g);

// Deepest geohash whose cell holds every point. Throws on empty input.
Geohash covering_geohash(std::span<const Point> points);

// First `bits` bits of g. Throws when bits > g.depth.
Geohash prefix(const Geohash& g, int bits);

bool has_prefix(const Geohash& g, const Geohash& p);

// Binary text form, e.g. "1100" for depth 4. The empty string is depth 0.
std::string to_string(const Geohash& g);
Geohash parse_geohash(std::string_view text);

}  // namespace geodabs

#endif  // GEODABS_GEO_H_
