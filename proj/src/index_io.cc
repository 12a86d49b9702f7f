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

#include <zlib.h>

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

namespace geodabs {

namespace {

constexpr char kMagic[4] = {'G', 'D', 'A', 'B'};

class Writer {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    out_.insert(out_.end(), p, p + n);
  }
  template <typename T>
  void fixed(T v) {
    static_assert(std::is_unsigned_v<T>);
    for (std::size_t i = 0; i < sizeof(T); ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f64(double v) { fixed(std::bit_cast<std::uint64_t>(v)); }
  void varint(std::uint64_t v) {
    while (v >= 0x80) {
      out_.push_back(static_cast<std::uint8_t>(v | 0x80));
      v >>= 7;
    }
    out_.push_back(static_cast<std::uint8_t>(v));
  }
  std::vector<std::uint8_t> take() { return std::move(out_); }
  const std::vector<std::uint8_t>& data() const { return out_; }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  template <typename T>
  T fixed() {
    need(sizeof(T));
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(static_cast<T>(in_[pos_ + i]) << (8 * i));
    pos_ += sizeof(T);
    return v;
  }
  double f64() { return std::bit_cast<double>(fixed<std::uint64_t>()); }
  std::uint64_t varint() {
    std::uint64_t v = 0;
    for (int shift = 0; shift < 64; shift += 7) {
      need(1);
      const std::uint8_t b = in_[pos_++];
      v |= static_cast<std::uint64_t>(b & 0x7f) << shift;
      if ((b & 0x80) == 0) return v;
    }
    throw IndexFormatError(IndexFormatError::Kind::kInconsistent, "index: varint too long");
  }
  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (in_.size() - pos_ < n) {
      throw IndexFormatError(IndexFormatError::Kind::kTruncated, "index: unexpected end of data");
    }
  }

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed large buffers in chunks.
  constexpr std::size_t kChunk = 1u << 30;
  for (std::size_t off = 0; off < bytes.size(); off += kChunk) {
    const std::size_t n = std::min(kChunk, bytes.size() - off);
    crc = ::crc32(crc, bytes.data() + off, static_cast<uInt>(n));
  }
  return static_cast<std::uint32_t>(crc);
}

}  // namespace

class IndexReader {
 public:
  static InvertedIndex read(std::span<const std::uint8_t> bytes);

 private:
  static InvertedIndex parse(
      Reader& r, std::vector<std::pair<std::uint32_t, std::vector<TrajectoryId>>>& stored);
};

std::vector<std::uint8_t> serialize(const InvertedIndex& index) {
  Writer w;
  w.bytes(kMagic, sizeof(kMagic));
  w.fixed<std::uint16_t>(kIndexFormatVersion);
  const FingerprintParams& p = index.params();
  for (int v : {p.k, p.t, p.depth, p.prefix_bits}) w.fixed(static_cast<std::uint16_t>(v));
  w.fixed<std::uint64_t>(index.size());
  w.fixed<std::uint64_t>(index.term_count());

  const auto& postings = index.core().postings();
  std::vector<std::uint32_t> terms;
  terms.reserve(postings.size());
  for (const auto& [term, list] : postings) terms.push_back(term);
  std::sort(terms.begin(), terms.end());
  for (std::uint32_t term : terms) {
    const auto& list = postings.at(term);
    w.fixed(term);
    w.fixed(static_cast<std::uint32_t>(list.size()));
    TrajectoryId prev = 0;
    for (TrajectoryId id : list) {
      w.varint(id - prev);
      prev = id;
    }
  }

  for (const auto& [id, meta] : index.meta()) {
    const FingerprintSet& set = index.set_of(id);
    w.fixed<std::uint64_t>(id);
    w.fixed(static_cast<std::uint32_t>(set.size()));
    std::uint32_t prev = 0;
    for (std::uint32_t v : set) {
      w.varint(v - prev);
      prev = v;
    }
    w.varint(meta.point_count);
    w.varint(meta.normalized_count);
    w.varint(meta.fingerprint_count);
    w.f64(meta.normalized_length_m);
  }
  w.fixed(crc32_of(w.data()));
  return w.take();
}

InvertedIndex IndexReader::read(std::span<const std::uint8_t> bytes) {
  using Kind = IndexFormatError::Kind;
  if (bytes.size() < sizeof(kMagic)) {
    throw IndexFormatError(Kind::kTruncated, "index: file too short for a header");
  }
  if (std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw IndexFormatError(Kind::kBadMagic, "index: bad magic, not a geodab index");
  }
  Reader r(bytes.subspan(sizeof(kMagic)));
  const auto version = r.fixed<std::uint16_t>();
  if (version != kIndexFormatVersion) {
    throw IndexFormatError(Kind::kBadVersion,
                           "index: unsupported format version " + std::to_string(version));
  }

  // Truncation is diagnosed structurally; any other defect is reported as a
  // checksum failure when the trailing CRC does not match.
  const auto checksum_matches = [&](std::size_t body_size) {
    if (bytes.size() < body_size + 4) return false;
    Reader tail(bytes.subspan(body_size, 4));
    return tail.fixed<std::uint32_t>() == crc32_of(bytes.first(body_size));
  };
  const std::size_t assumed_body = bytes.size() >= 4 ? bytes.size() - 4 : 0;

  InvertedIndex index;
  std::vector<std::pair<std::uint32_t, std::vector<TrajectoryId>>> stored;
  try {
    index = parse(r, stored);
  } catch (const IndexFormatError& e) {
    if (e.kind() == Kind::kTruncated || checksum_matches(assumed_body)) throw;
    throw IndexFormatError(Kind::kChecksum, "index: checksum mismatch (corrupt data)");
  }
  if (r.remaining() < 4) throw IndexFormatError(Kind::kTruncated, "index: missing checksum");
  if (!checksum_matches(assumed_body)) {
    throw IndexFormatError(Kind::kChecksum, "index: checksum mismatch (corrupt data)");
  }
  if (r.remaining() != 4) {
    throw IndexFormatError(Kind::kInconsistent, "index: trailing bytes after trajectory table");
  }

  const auto& rebuilt = index.core().postings();
  bool consistent = rebuilt.size() == stored.size();
  for (const auto& [term, list] : stored) {
    if (!consistent) break;
    auto it = rebuilt.find(term);
    consistent = it != rebuilt.end() && it->second == list;
  }
  if (!consistent || !index.verify()) {
    throw IndexFormatError(Kind::kInconsistent, "index: postings disagree with trajectory sets");
  }
  return index;
}

InvertedIndex IndexReader::parse(
    Reader& r, std::vector<std::pair<std::uint32_t, std::vector<TrajectoryId>>>& stored) {
  using Kind = IndexFormatError::Kind;
  FingerprintParams params;
  params.k = r.fixed<std::uint16_t>();
  params.t = r.fixed<std::uint16_t>();
  params.depth = r.fixed<std::uint16_t>();
  params.prefix_bits = r.fixed<std::uint16_t>();
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw IndexFormatError(Kind::kInconsistent, std::string("index: bad parameters: ") + e.what());
  }
  const auto traj_count = r.fixed<std::uint64_t>();
  const auto term_count = r.fixed<std::uint64_t>();

  // Postings are rebuilt from the per-trajectory sets and compared against
  // the stored ones by the caller.
  for (std::uint64_t i = 0; i < term_count; ++i) {
    const auto term = r.fixed<std::uint32_t>();
    const auto n = r.fixed<std::uint32_t>();
    if (n > r.remaining()) throw IndexFormatError(Kind::kTruncated, "index: posting list truncated");
    std::vector<TrajectoryId> list(n);
    TrajectoryId prev = 0;
    for (auto& id : list) {
      id = prev + r.varint();
      prev = id;
    }
    stored.emplace_back(term, std::move(list));
  }

  InvertedIndex index(params);
  for (std::uint64_t i = 0; i < traj_count; ++i) {
    PreparedTrajectory t;
    t.id = r.fixed<std::uint64_t>();
    const auto n = r.fixed<std::uint32_t>();
    if (n > r.remaining()) throw IndexFormatError(Kind::kTruncated, "index: set truncated");
    std::vector<std::uint32_t> values(n);
    std::uint64_t prev = 0;
    for (std::size_t j = 0; j < values.size(); ++j) {
      const std::uint64_t delta = r.varint();
      const std::uint64_t next = prev + delta;
      if (next > UINT32_MAX || (j > 0 && delta == 0)) {
        throw IndexFormatError(Kind::kInconsistent, "index: malformed fingerprint set");
      }
      values[j] = static_cast<std::uint32_t>(next);
      prev = next;
    }
    t.set = FingerprintSet::from_sorted(std::move(values));
    t.meta.point_count = r.varint();
    t.meta.normalized_count = r.varint();
    t.meta.fingerprint_count = r.varint();
    t.meta.normalized_length_m = r.f64();
    if (index.contains(t.id)) {
      throw IndexFormatError(Kind::kInconsistent, "index: duplicate trajectory " + std::to_string(t.id));
    }
    index.insert(std::move(t));
  }
  return index;
}

InvertedIndex deserialize(std::span<const std::uint8_t> bytes) { return IndexReader::read(bytes); }

void save(const InvertedIndex& index, const std::filesystem::path& path) {
  const auto bytes = serialize(index);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IndexFormatError(IndexFormatError::Kind::kIo, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IndexFormatError(IndexFormatError::Kind::kIo, "failed writing " + path.string());
}

InvertedIndex load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IndexFormatError(IndexFormatError::Kind::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize(bytes);
}

}  // namespace geodabs
