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

#include "geodabs/geo.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace geodabs {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

void check_depth(int depth) {
  if (depth < 0 || depth > kMaxGeohashDepth) {
    throw std::invalid_argument("geohash depth must be in [0, 36], got " +
                                std::to_string(depth));
  }
}

}  // namespace

bool is_valid(const Point& p) {
  return std::isfinite(p.lat) && std::isfinite(p.lon) && p.lat >= -90.0 &&
         p.lat <= 90.0 && p.lon >= -180.0 && p.lon < 180.0;
}

Point make_point(double lat, double lon) {
  if (lon == 180.0) lon = -180.0;
  Point p{lat, lon};
  if (!is_valid(p)) {
    throw std::invalid_argument("invalid coordinate (" + std::to_string(lat) +
                                ", " + std::to_string(lon) + ")");
  }
  return p;
}

double haversine(const Point& a, const Point& b) {
  const double dlat = (a.lat - b.lat) * kDegToRad;
  const double dlon = (a.lon - b.lon) * kDegToRad;
  const double s1 = std::sin(dlat / 2.0);
  const double s2 = std::sin(dlon / 2.0);
  double h = s1 * s1 + std::cos(a.lat * kDegToRad) * std::cos(b.lat * kDegToRad) * s2 * s2;
  h = std::min(1.0, std::max(0.0, h));
  return 2.0 * kEarthRadiusMeters * std::asin(std::sqrt(h));
}

bool Cell::contains(const Point& p) const {
  const bool lat_in = p.lat >= lat_min && (p.lat < lat_max || (lat_max == 90.0 && p.lat == 90.0));
  return lat_in && p.lon >= lon_min && p.lon < lon_max;
}

Geohash geohash_encode(const Point& p, int depth) {
  check_depth(depth);
  double lat_lo = -90.0, lat_hi = 90.0;
  double lon_lo = -180.0, lon_hi = 180.0;
  std::uint64_t bits = 0;
  for (int i = 0; i < depth; ++i) {
    bits <<= 1;
    if (i % 2 == 0) {
      const double mid = (lon_lo + lon_hi) / 2.0;
      if (p.lon >= mid) {
        bits |= 1;
        lon_lo = mid;
      } else {
        lon_hi = mid;
      }
    } else {
      const double mid = (lat_lo + lat_hi) / 2.0;
      if (p.lat >= mid) {
        bits |= 1;
        lat_lo = mid;
      } else {
        lat_hi = mid;
      }
    }
  }
  return {bits, depth};
}

Cell geohash_decode(const Geohash& g) {
  check_depth(g.depth);
  Cell c;
  for (int i = 0; i < g.depth; ++i) {
    const bool bit = (g.bits >> (g.depth - 1 - i)) & 1u;
    if (i % 2 == 0) {
      const double mid = (c.lon_min + c.lon_max) / 2.0;
      (bit ? c.lon_min : c.lon_max) = mid;
    } else {
      const double mid = (c.lat_min + c.lat_max) / 2.0;
      (bit ? c.lat_min : c.lat_max) = mid;
    }
  }
  return c;
}

Geohash covering_geohash(std::span<const Point> points) {
  if (points.empty()) {
    throw std::invalid_argument("covering_geohash needs at least one point");
  }
  const Geohash first = geohash_encode(points.front(), kMaxGeohashDepth);
  int depth = kMaxGeohashDepth;
  for (const Point& p : points.subspan(1)) {
    const std::uint64_t diff = first.bits ^ geohash_encode(p, kMaxGeohashDepth).bits;
    if (diff == 0) continue;
    // Leading bits shared within the 36-bit window.
    const int common = std::countl_zero(diff) - (64 - kMaxGeohashDepth);
    depth = std::min(depth, common);
    if (depth == 0) break;
  }
  return prefix(first, depth);
}

Geohash prefix(const Geohash& g, int bits) {
  if (bits < 0 || bits > g.depth) {
    throw std::invalid_argument("prefix length " + std::to_string(bits) +
                                " exceeds geohash depth " + std::to_string(g.depth));
  }
  return {g.bits >> (g.depth - bits), bits};
}

bool has_prefix(const Geohash& g, const Geohash& p) {
  return p.depth <= g.depth && prefix(g, p.depth) == p;
}

std::string to_string(const Geohash& g) {
  std::string out(static_cast<std::size_t>(g.depth), '0');
  for (int i = 0; i < g.depth; ++i) {
    if ((g.bits >> (g.depth - 1 - i)) & 1u) out[static_cast<std::size_t>(i)] = '1';
  }
  return out;
}

Geohash parse_geohash(std::string_view text) {
  if (text.size() > static_cast<std::size_t>(kMaxGeohashDepth)) {
    throw std::invalid_argument("geohash text longer than 36 bits");
  }
  Geohash g{0, static_cast<int>(text.size())};
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("geohash text must contain only 0 and 1");
    }
    g.bits = (g.bits << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return g;
}

}  // namespace geodabs
