#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <string>
#include <vector>

#include "glrmc/error.hpp"

namespace glrmc {

struct RowTag {};
struct ColumnTag {};

/// Sorted, duplicate-free set of 0-based indices. The tag keeps row and
/// column sets from being mixed up at call sites. Reports convert to
/// 1-based with to_one_based().
template <class Tag>
class IndexSet {
 public:
  using value_type = std::size_t;
  using const_iterator = std::vector<std::size_t>::const_iterator;

  IndexSet() = default;

  /// Accepts any order; sorts and removes duplicates.
  explicit IndexSet(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
    std::sort(indices_.begin(), indices_.end());
    indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
  }

  IndexSet(std::initializer_list<std::size_t> indices)
      : IndexSet(std::vector<std::size_t>(indices)) {}

  /// {0, ..., count-1}
  static IndexSet range(std::size_t count) {
    IndexSet s;
    s.indices_.resize(count);
    for (std::size_t i = 0; i < count; ++i) s.indices_[i] = i;
    return s;
  }

  static IndexSet from_one_based(const std::vector<std::size_t>& one_based) {
    std::vector<std::size_t> v;
    v.reserve(one_based.size());
    for (auto i : one_based) {
      if (i == 0) throw Error(ErrorCode::IndexOutOfRange, "1-based index 0");
      v.push_back(i - 1);
    }
    return IndexSet(std::move(v));
  }

  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  const_iterator begin() const noexcept { return indices_.begin(); }
  const_iterator end() const noexcept { return indices_.end(); }
  std::size_t operator[](std::size_t pos) const { return indices_[pos]; }
  const std::vector<std::size_t>& values() const noexcept { return indices_; }

  bool contains(std::size_t index) const {
    return std::binary_search(indices_.begin(), indices_.end(), index);
  }

  /// Throws IndexOutOfRange unless every index is < bound.
  void check_bound(std::size_t bound, const char* what) const {
    if (!indices_.empty() && indices_.back() >= bound) {
      throw Error(ErrorCode::IndexOutOfRange,
                  std::string(what) + " index " + std::to_string(indices_.back() + 1) +
                      " exceeds " + std::to_string(bound));
    }
  }

  IndexSet without(std::size_t index) const {
    IndexSet s;
    s.indices_.reserve(indices_.size());
    for (auto i : indices_)
      if (i != index) s.indices_.push_back(i);
    return s;
  }

  /// {0..bound-1} minus this set.
  IndexSet complement(std::size_t bound) const {
    IndexSet s;
    for (std::size_t i = 0; i < bound; ++i)
      if (!contains(i)) s.indices_.push_back(i);
    return s;
  }

  IndexSet set_difference(const IndexSet& other) const {
    IndexSet s;
    std::set_difference(indices_.begin(), indices_.end(), other.indices_.begin(),
                        other.indices_.end(), std::back_inserter(s.indices_));
    return s;
  }

  IndexSet set_union(const IndexSet& other) const {
    IndexSet s;
    std::set_union(indices_.begin(), indices_.end(), other.indices_.begin(), other.indices_.end(),
                   std::back_inserter(s.indices_));
    return s;
  }

  IndexSet set_intersection(const IndexSet& other) const {
    IndexSet s;
    std::set_intersection(indices_.begin(), indices_.end(), other.indices_.begin(),
                          other.indices_.end(), std::back_inserter(s.indices_));
    return s;
  }

  bool is_subset_of(const IndexSet& other) const {
    return std::includes(other.indices_.begin(), other.indices_.end(), indices_.begin(),
                         indices_.end());
  }

  std::vector<std::size_t> to_one_based() const {
    std::vector<std::size_t> v(indices_);
    for (auto& i : v) ++i;
    return v;
  }

  /// "{1,3,4}" in 1-based notation.
  std::string to_string() const {
    std::string s = "{";
    for (std::size_t k = 0; k < indices_.size(); ++k) {
      if (k) s += ',';
      s += std::to_string(indices_[k] + 1);
    }
    return s + "}";
  }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;
  friend auto operator<=>(const IndexSet& a, const IndexSet& b) {
    return a.indices_ <=> b.indices_;
  }

 private:
  std::vector<std::size_t> indices_;
};

using RowSet = IndexSet<RowTag>;
using ColumnSet = IndexSet<ColumnTag>;

/// C(n, r), saturating at UINT64_MAX.
inline std::uint64_t binomial(std::size_t n, std::size_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  unsigned __int128 acc = 1;
  for (std::size_t i = 1; i <= r; ++i) {
    acc = acc * (n - r + i) / i;
    if (acc > kMax) return kMax;
  }
  return static_cast<std::uint64_t>(acc);
}

/// Advances `combo` (strictly increasing, values < n) to the next
/// combination in lexicographic order. Returns false after the last one.
inline bool next_combination(std::vector<std::size_t>& combo, std::size_t n) {
  const std::size_t r = combo.size();
  if (r == 0) return false;
  std::size_t i = r;
  while (i > 0) {
    --i;
    if (combo[i] < n - r + i) {
      ++combo[i];
      for (std::size_t j = i + 1; j < r; ++j) combo[j] = combo[j - 1] + 1;
      return true;
    }
  }
  return false;
}

/// Calls visit(subset) for every size-r subset of {0..n-1} in lexicographic
/// order until visit returns true. Returns the number of subsets visited.
template <class Set, class Visit>
std::size_t for_each_combination(std::size_t n, std::size_t r, Visit&& visit) {
  if (r > n) return 0;
  std::vector<std::size_t> combo(r);
  for (std::size_t i = 0; i < r; ++i) combo[i] = i;
  std::size_t visited = 0;
  do {
    ++visited;
    if (visit(Set(combo))) break;
  } while (next_combination(combo, n));
  return visited;
}

}  // namespace glrmc
