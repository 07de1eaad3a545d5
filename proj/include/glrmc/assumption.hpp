#pragma once

#include <cstddef>
#include <string>

#include "glrmc/error.hpp"
#include "glrmc/matching.hpp"
#include "glrmc/pattern.hpp"

namespace glrmc {

/// Outcome of the non-triviality screen: m >= n and grank(M-bar) > n - k.
struct AssumptionCheck {
  bool holds = false;
  bool wide_enough = false;        // m >= n
  bool rank_exceeds_target = false;  // grank(M-bar) > n - k
  std::size_t grank_bar = 0;
  std::string diagnostic;
};

inline void check_k(const PatternMatrix& m, std::size_t k) {
  if (k < 1 || k > m.rows())
    throw Error(ErrorCode::InvalidK,
                "k = " + std::to_string(k) + " outside [1, " + std::to_string(m.rows()) + "]");
}

/// When this fails only because grank(M-bar) <= n - k, the realization with
/// every ? set to zero already has rank <= n - k: the problem is trivially
/// feasible.
inline AssumptionCheck assumption1_holds(const PatternMatrix& m, std::size_t k) {
  check_k(m, k);
  AssumptionCheck out;
  const auto n = m.rows();
  out.wide_enough = m.cols() >= n;
  out.grank_bar = generic_rank(bar_pattern(m));
  out.rank_exceeds_target = out.grank_bar + k > n;
  out.holds = out.wide_enough && out.rank_exceeds_target;
  if (!out.wide_enough) {
    out.diagnostic = "m < n (" + std::to_string(m.cols()) + " < " + std::to_string(n) +
                     "); transpose the pattern first";
  } else if (!out.rank_exceeds_target) {
    out.diagnostic = "grank(M-bar) = " + std::to_string(out.grank_bar) +
                     " <= n - k = " + std::to_string(n - k) + "; trivially feasible";
  } else {
    out.diagnostic = "m >= n and grank(M-bar) = " + std::to_string(out.grank_bar) +
                     " > n - k = " + std::to_string(n - k);
  }
  return out;
}

}  // namespace glrmc
