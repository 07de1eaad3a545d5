#pragma once

// Test-side reference implementations. Nothing here calls into the
// library's matching or feasibility code, so agreement is meaningful.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "glrmc/index_set.hpp"
#include "glrmc/pattern.hpp"
#include "glrmc/rng.hpp"

namespace glrmc::test {

inline std::string data_path(const std::string& name) {
  return std::string(GLRMC_DATA_DIR) + "/" + name;
}

inline PatternMatrix fixture(const std::string& name) {
  std::ifstream in(data_path(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + name);
  return parse_pattern(in);
}

/// Kuhn's augmenting-path matching on M[rows, cols]; ? counts as an edge
/// only when query_edges is set.
inline std::size_t kuhn_rank(const PatternMatrix& m, const std::vector<std::size_t>& rows,
                             const std::vector<std::size_t>& cols, bool query_edges) {
  std::vector<int> owner(cols.size(), -1);
  auto edge = [&](std::size_t ri, std::size_t ci) {
    const auto e = m(rows[ri], cols[ci]);
    return e == EntryKind::Star || (query_edges && e == EntryKind::Query);
  };
  std::function<bool(std::size_t, std::vector<char>&)> augment = [&](std::size_t ri,
                                                                     std::vector<char>& seen) {
    for (std::size_t ci = 0; ci < cols.size(); ++ci) {
      if (!edge(ri, ci) || seen[ci]) continue;
      seen[ci] = 1;
      if (owner[ci] < 0 || augment(static_cast<std::size_t>(owner[ci]), seen)) {
        owner[ci] = static_cast<int>(ri);
        return true;
      }
    }
    return false;
  };
  std::size_t size = 0;
  for (std::size_t ri = 0; ri < rows.size(); ++ri) {
    std::vector<char> seen(cols.size(), 0);
    if (augment(ri, seen)) ++size;
  }
  return size;
}

inline std::vector<std::size_t> iota_vec(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

inline std::size_t kuhn_rank_all(const PatternMatrix& m, bool query_edges) {
  return kuhn_rank(m, iota_vec(m.rows()), iota_vec(m.cols()), query_edges);
}

/// All size-r subsets of {0..n-1}, lexicographic.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == r) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

inline std::vector<std::size_t> complement(const std::vector<std::size_t>& s, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (std::find(s.begin(), s.end(), i) == s.end()) out.push_back(i);
  return out;
}

/// B* for basis I at deficiency k: the k-row complements of the
/// (n-k)-row subsets K where M(I)[K, I] has full generic rank.
inline std::vector<std::vector<std::size_t>> bstar_family(const PatternMatrix& m,
                                                          const std::vector<std::size_t>& basis,
                                                          std::size_t k) {
  const auto n = m.rows();
  std::vector<std::vector<std::size_t>> out;
  for (const auto& kset : subsets(n, n - k))
    if (kuhn_rank(m, kset, basis, true) == n - k) out.push_back(complement(kset, n));
  return out;
}

/// k = 1 column conditions straight from the set definitions.
inline bool brute_k1_conditions(const PatternMatrix& m, const std::vector<std::size_t>& basis) {
  const auto n = m.rows();
  std::vector<char> in_bstar(n, 0);
  for (const auto& w : bstar_family(m, basis, 1)) in_bstar[w[0]] = 1;
  for (std::size_t i = 0; i < m.cols(); ++i) {
    if (std::find(basis.begin(), basis.end(), i) != basis.end()) continue;
    bool star_hit = false;
    bool query_hit = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (!in_bstar[j]) continue;
      star_hit |= m(j, i) == EntryKind::Star;
      query_hit |= m(j, i) == EntryKind::Query;
    }
    if (star_hit && !query_hit) return false;
  }
  return true;
}

inline bool brute_preservable(const PatternMatrix& m, const std::vector<std::size_t>& basis) {
  return kuhn_rank(m, iota_vec(m.rows()), basis, true) == basis.size();
}

/// Exhaustive k = 1 decision by brute force; the trivially feasible case
/// (grank(M-bar) <= n-1) counts as feasible.
inline bool brute_k1_feasible(const PatternMatrix& m) {
  const auto n = m.rows();
  if (kuhn_rank_all(m, false) <= n - 1) return true;
  for (const auto& basis : subsets(m.cols(), n - 1))
    if (brute_preservable(m, basis) && brute_k1_conditions(m, basis)) return true;
  return false;
}

struct BruteRho {
  std::size_t rho = 0;
  bool s_nonempty = false;
};

/// rho_i: largest |W n N_i| over W in B*; S_i nonempty iff some W in B*
/// holds rho_i rows of N?i.
inline BruteRho brute_rho(const PatternMatrix& m, const std::vector<std::size_t>& basis,
                          std::size_t k, std::size_t col) {
  BruteRho out;
  const auto family = bstar_family(m, basis, k);
  auto overlap = [&](const std::vector<std::size_t>& w, bool queries_only) {
    std::size_t c = 0;
    for (auto j : w) {
      const auto e = m(j, col);
      c += queries_only ? e == EntryKind::Query : e != EntryKind::Zero;
    }
    return c;
  };
  for (const auto& w : family) out.rho = std::max(out.rho, overlap(w, false));
  for (const auto& w : family) out.s_nonempty |= overlap(w, true) >= out.rho;
  return out;
}

/// Pattern with i.i.d. entries: Star with probability p_star, Query with
/// p_query, Zero otherwise.
inline PatternMatrix random_pattern(Rng& rng, std::size_t n, std::size_t m, double p_star,
                                    double p_query) {
  std::vector<EntryKind> e(n * m);
  for (auto& x : e) {
    const double u = static_cast<double>(rng.below(1'000'000)) / 1'000'000.0;
    x = u < p_star ? EntryKind::Star : (u < p_star + p_query ? EntryKind::Query : EntryKind::Zero);
  }
  return PatternMatrix(n, m, std::move(e));
}

/// Every n x m pattern, indexed in base 3 (0 -> '0', 1 -> '*', 2 -> '?').
inline PatternMatrix pattern_from_index(std::size_t n, std::size_t m, std::size_t index) {
  std::vector<EntryKind> e(n * m);
  for (auto& x : e) {
    x = static_cast<EntryKind>(index % 3);
    index /= 3;
  }
  return PatternMatrix(n, m, std::move(e));
}

}  // namespace glrmc::test
