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

#ifndef GEODABS_TERM_SET_H_
#define GEODABS_TERM_SET_H_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace geodabs {

// Sorted, deduplicated set of integer terms. Intersections are computed by
// a linear merge, which is the hot path of Jaccard scoring.
template <typename Term>
class TermSet {
 public:
  using value_type = Term;

  TermSet() = default;
  TermSet(std::initializer_list<Term> terms) : TermSet(std::vector<Term>(terms)) {}
  explicit TermSet(std::vector<Term> terms) : terms_(std::move(terms)) {
    std::sort(terms_.begin(), terms_.end());
    terms_.erase(std::unique(terms_.begin(), terms_.end()), terms_.end());
  }

  // Trusts the caller that `sorted` is strictly increasing.
  static TermSet from_sorted(std::vector<Term> sorted) {
    TermSet s;
    s.terms_ = std::move(sorted);
    return s;
  }

  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  bool contains(Term t) const { return std::binary_search(terms_.begin(), terms_.end(), t); }
  std::span<const Term> values() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  std::size_t intersection_size(const TermSet& other) const {
    std::size_t n = 0;
    auto a = terms_.begin();
    auto b = other.terms_.begin();
    while (a != terms_.end() && b != other.terms_.end()) {
      if (*a < *b) {
        ++a;
      } else if (*b < *a) {
        ++b;
      } else {
        ++n;
        ++a;
        ++b;
      }
    }
    return n;
  }
  std::size_t union_size(const TermSet& other) const {
    return size() + other.size() - intersection_size(other);
  }

  friend bool operator==(const TermSet&, const TermSet&) = default;

 private:
  std::vector<Term> terms_;
};

using FingerprintSet = TermSet<std::uint32_t>;
using CellSet = TermSet<std::uint64_t>;

// 1 - |F ∩ G| / |F ∪ G|. Two empty sets are at distance 0.
template <typename Term>
double jaccard_distance(const TermSet<Term>& f, const TermSet<Term>& g) {
  const std::size_t inter = f.intersection_size(g);
  const std::size_t uni = f.size() + g.size() - inter;
  if (uni == 0) return 0.0;
  return 1.0 - static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace geodabs

#endif  // GEODABS_TERM_SET_H_
