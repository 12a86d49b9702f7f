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

#ifndef GEODABS_INDEX_IO_H_
#define GEODABS_INDEX_IO_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "geodabs/index.h"

namespace geodabs {

inline constexpr std::uint16_t kIndexFormatVersion = 1;

class IndexFormatError : public std::runtime_error {
 public:
  enum class Kind { kIo, kBadMagic, kBadVersion, kTruncated, kChecksum, kInconsistent };

  IndexFormatError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Little-endian layout:
//   "GDAB" | version u16 | k, t, depth, prefix_bits u16 | trajectories u64 |
//   terms u64
//   per term (ascending): geodab u32 | posting count u32 | varint id deltas
//   per trajectory (ascending id): id u64 | set size u32 | varint geodab
//     deltas | varint point count | varint normalized count | varint
//     fingerprint count | f64 normalized length
//   CRC-32 of everything above, u32
std::vector<std::uint8_t> serialize(const InvertedIndex& index);
InvertedIndex deserialize(std::span<const std::uint8_t> bytes);

void save(const InvertedIndex& index, const std::filesystem::path& path);
InvertedIndex load(const std::filesystem::path& path);

}  // namespace geodabs

#endif  // GEODABS_INDEX_IO_H_
