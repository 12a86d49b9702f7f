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

#include "geodabs/index_io.h"

#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>

#include "geodabs/baseline.h"

namespace geodabs {
namespace {

using Kind = IndexFormatError::Kind;

InvertedIndex sample_index(std::size_t n) {
  InvertedIndex index{FingerprintParams{}};
  for (std::size_t i = 0; i < n; ++i) {
    Trajectory s = random_walk(40 + i % 50, 1000 + i);
    s.id = i * 7 + 3;
    index.insert(s);
  }
  return index;
}

Kind kind_of(std::span<const std::uint8_t> bytes) {
  try {
    deserialize(bytes);
  } catch (const IndexFormatError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected a format error";
  return Kind::kIo;
}

TEST(IndexIo, EmptyRoundTrip) {
  const InvertedIndex empty{FingerprintParams{5, 9, 30, 12}};
  const auto bytes = serialize(empty);
  const InvertedIndex back = deserialize(bytes);
  EXPECT_EQ(back, empty);
  EXPECT_EQ(back.size(), 0u);
  EXPECT_EQ(back.params().k, 5);
  EXPECT_EQ(back.params().prefix_bits, 12);
}

TEST(IndexIo, HeaderLayout) {
  const auto bytes = serialize(sample_index(3));
  ASSERT_GE(bytes.size(), 34u);
  EXPECT_EQ(std::memcmp(bytes.data(), "GDAB", 4), 0);
  EXPECT_EQ(bytes[4] | bytes[5] << 8, kIndexFormatVersion);
  EXPECT_EQ(bytes[6], 6);
  EXPECT_EQ(bytes[8], 12);
  EXPECT_EQ(bytes[10], 36);
  EXPECT_EQ(bytes[12], 16);
  EXPECT_EQ(bytes[14], 3);
}

TEST(IndexIo, LargeRoundTripThroughFile) {
  const InvertedIndex index = sample_index(1000);
  const auto path = std::filesystem::temp_directory_path() / "geodabs_io_test.gdab";
  save(index, path);
  const InvertedIndex back = load(path);
  std::filesystem::remove(path);
  EXPECT_EQ(back, index);
  EXPECT_TRUE(back.verify());
  const Trajectory q = random_walk(60, 1010);
  EXPECT_EQ(back.query(q, 0.9).results, index.query(q, 0.9).results);
  EXPECT_EQ(serialize(back), serialize(index));
}

TEST(IndexIo, Deterministic) {
  EXPECT_EQ(serialize(sample_index(50)), serialize(sample_index(50)));
}

TEST(IndexIo, BadMagic) {
  auto bytes = serialize(sample_index(5));
  bytes[0] = 'X';
  EXPECT_EQ(kind_of(bytes), Kind::kBadMagic);
}

TEST(IndexIo, BadVersion) {
  auto bytes = serialize(sample_index(5));
  bytes[4] = 9;
  EXPECT_EQ(kind_of(bytes), Kind::kBadVersion);
}

TEST(IndexIo, EveryTruncationRejected) {
  const auto bytes = serialize(sample_index(4));
  for (std::size_t n = 0; n < bytes.size(); ++n) {
    const auto k = kind_of(std::span(bytes.data(), n));
    if (n < 4) {
      EXPECT_TRUE(k == Kind::kTruncated || k == Kind::kBadMagic) << n;
    } else {
      EXPECT_TRUE(k == Kind::kTruncated || k == Kind::kChecksum) << n;
    }
  }
  EXPECT_EQ(kind_of(std::span(bytes.data(), bytes.size() / 2)), Kind::kTruncated);
}

TEST(IndexIo, EveryBitFlipInBodyRejected) {
  const auto bytes = serialize(sample_index(3));
  for (std::size_t i = 8; i < bytes.size(); ++i) {
    auto copy = bytes;
    copy[i] ^= 0x10;
    EXPECT_THROW(deserialize(copy), IndexFormatError) << i;
  }
  auto copy = bytes;
  copy[bytes.size() / 2] ^= 0x01;
  const auto k = kind_of(copy);
  EXPECT_TRUE(k == Kind::kChecksum || k == Kind::kTruncated);
}

TEST(IndexIo, TrailingBytesRejected) {
  auto bytes = serialize(sample_index(2));
  bytes.push_back(0);
  EXPECT_THROW(deserialize(bytes), IndexFormatError);
}

TEST(IndexIo, MissingFile) {
  try {
    load("/nonexistent/dir/index.gdab");
    FAIL();
  } catch (const IndexFormatError& e) {
    EXPECT_EQ(e.kind(), Kind::kIo);
  }
}

}  // namespace
}  // namespace geodabs
