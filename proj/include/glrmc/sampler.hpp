#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "glrmc/error.hpp"
#include "glrmc/index_set.hpp"
#include "glrmc/rng.hpp"

namespace glrmc {

enum class SamplerMode { Exhaustive, Randomized };

constexpr std::string_view to_string(SamplerMode mode) {
  return mode == SamplerMode::Exhaustive ? "exhaustive" : "randomized";
}

/// How candidate index subsets are produced: every subset once in
/// lexicographic order, or at most `limit` uniform draws.
struct BasisSampler {
  SamplerMode mode = SamplerMode::Exhaustive;
  std::size_t limit = 0;
  std::uint64_t seed = kDefaultSeed;

  static BasisSampler exhaustive() { return {SamplerMode::Exhaustive, 0, kDefaultSeed}; }
  static BasisSampler randomized(std::size_t limit, std::uint64_t seed) {
    if (limit == 0) throw Error(ErrorCode::InvalidArgument, "sample budget must be >= 1");
    return {SamplerMode::Randomized, limit, seed};
  }

  bool is_exhaustive() const noexcept { return mode == SamplerMode::Exhaustive; }
};

/// Feeds size-r subsets of {0..n-1} to visit(set) until it returns true.
/// Returns the number of subsets drawn. When C(n, r) <= 10 * limit the
/// family is small enough to list, and the draws are taken without
/// replacement (a random prefix of a shuffled listing); otherwise each draw
/// is an independent uniform subset.
template <class Set, class Visit>
std::size_t sample_subsets(const BasisSampler& sampler, std::size_t n, std::size_t r,
                           Visit&& visit) {
  if (sampler.is_exhaustive()) return for_each_combination<Set>(n, r, visit);
  if (r > n) return 0;
  Rng rng(sampler.seed);
  std::size_t draws = 0;
  if (binomial(n, r) <= 10 * static_cast<std::uint64_t>(sampler.limit)) {
    std::vector<std::vector<std::size_t>> all;
    for_each_combination<Set>(n, r, [&](const Set& s) {
      all.emplace_back(s.begin(), s.end());
      return false;
    });
    rng.shuffle(all);
    for (auto& pick : all) {
      if (draws == sampler.limit) break;
      ++draws;
      if (visit(Set(std::move(pick)))) break;
    }
    return draws;
  }
  while (draws < sampler.limit) {
    ++draws;
    if (visit(Set(rng.subset(n, r)))) break;
  }
  return draws;
}

}  // namespace glrmc
