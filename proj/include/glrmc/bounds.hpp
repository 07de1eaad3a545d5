#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "glrmc/feasibility.hpp"
#include "glrmc/matching.hpp"
#include "glrmc/pattern.hpp"
#include "glrmc/rng.hpp"
#include "glrmc/sampler.hpp"

namespace glrmc {

enum class BoundCondition { Sufficient, Necessary };

constexpr std::string_view to_string(BoundCondition c) {
  return c == BoundCondition::Sufficient ? "sufficient" : "necessary";
}

struct BoundsOptions {
  SamplerMode mode = SamplerMode::Randomized;
  /// Basis draws per inner rank-deficiency test.
  std::size_t t_m = 30;
  /// Row-subset draws per necessary-condition test.
  std::size_t t_bar = 110;
  /// Basis draws per sufficient-condition test.
  std::size_t t_hat = 50;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t inner_budget = 10'000;
};

/// One predicate evaluation of the bisection (or of the repair step).
struct TraceStep {
  std::size_t r_mid = 0;
  BoundCondition condition = BoundCondition::Sufficient;
  Status verdict = Status::Unknown;
  /// Sufficient: the condition fired. Necessary: no violation was found.
  bool satisfied = false;
  bool randomized = false;
  bool confirmation = false;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct BoundResult {
  std::size_t value = 0;
  std::vector<TraceStep> trace;
  /// Witness behind the returned upper bound (sufficient condition at value).
  std::optional<Witness> witness;
  /// Violating row subset behind the returned lower bound (at value - 1).
  std::optional<RowSet> violation;
  bool repaired = false;

  friend bool operator==(const BoundResult&, const BoundResult&) = default;
};

struct RankBounds {
  std::size_t lower = 0;
  std::size_t upper = 0;
  std::size_t grank_bar = 0;
  BoundResult lower_detail;
  BoundResult upper_detail;
  BoundsOptions options;
  /// lower <= upper <= grank(M-bar); randomized runs may break the first.
  bool consistent = true;
};

namespace detail {

inline BasisSampler bound_sampler(const BoundsOptions& o, std::size_t limit, std::uint64_t seed) {
  return o.mode == SamplerMode::Exhaustive ? BasisSampler::exhaustive()
                                           : BasisSampler::randomized(limit, seed);
}

struct Evaluation {
  TraceStep step;
  FeasibilityVerdict verdict;
};

inline Evaluation evaluate_sufficient(const PatternMatrix& m, std::size_t r,
                                      const BoundsOptions& o, std::uint64_t salt) {
  Evaluation e;
  e.step.r_mid = r;
  e.step.condition = BoundCondition::Sufficient;
  e.step.randomized = o.mode == SamplerMode::Randomized;
  if (r >= m.rows()) {
    // rank <= n always holds
    e.step.verdict = Status::Feasible;
    e.step.satisfied = true;
    e.verdict.status = Status::Feasible;
    e.verdict.trivial = true;
    return e;
  }
  const auto k = m.rows() - r;
  e.verdict = glrmc_k_sufficient(m, k, bound_sampler(o, o.t_hat, derive_seed(o.seed, {1, r, salt})));
  e.step.verdict = e.verdict.status;
  e.step.satisfied =
      e.verdict.status == Status::SufficientHolds || e.verdict.status == Status::Feasible;
  return e;
}

inline Evaluation evaluate_necessary(const PatternMatrix& m, std::size_t r,
                                     const BoundsOptions& o, std::uint64_t salt) {
  Evaluation e;
  e.step.r_mid = r;
  e.step.condition = BoundCondition::Necessary;
  e.step.randomized = o.mode == SamplerMode::Randomized;
  if (r >= m.rows()) {
    e.step.verdict = Status::Feasible;
    e.step.satisfied = true;
    e.verdict.status = Status::Feasible;
    e.verdict.trivial = true;
    return e;
  }
  const auto k = m.rows() - r;
  const auto rows = bound_sampler(o, o.t_bar, derive_seed(o.seed, {2, r, salt}));
  const auto inner = bound_sampler(o, o.t_m, derive_seed(o.seed, {3, r, salt}));
  e.verdict = glrmc_k_necessary(m, k, rows, inner, NecessaryOptions{o.inner_budget, true});
  e.step.verdict = e.verdict.status;
  e.step.satisfied =
      e.verdict.status != Status::NecessaryFails && e.verdict.status != Status::Infeasible;
  return e;
}

template <class Evaluate>
BoundResult bisect(const PatternMatrix& m, Evaluate&& evaluate,
                   std::vector<Evaluation>& evaluations) {
  BoundResult out;
  const auto grank_bar = static_cast<long long>(generic_rank(bar_pattern(m)));
  long long high = grank_bar;
  long long low = 0;
  while (high >= low) {
    const long long mid = (high + low) / 2;  // both non-negative: floor
    auto e = evaluate(static_cast<std::size_t>(mid), 0);
    out.trace.push_back(e.step);
    const bool ok = e.step.satisfied;
    evaluations.push_back(std::move(e));
    if (ok)
      high = mid - 1;
    else
      low = mid + 1;
  }
  out.value = static_cast<std::size_t>(high + 1);
  return out;
}

}  // namespace detail

/// Bisection over r in [0, grank(M-bar)] with the sufficient condition at
/// k = n - r. The returned rank carries a re-verified witness; if the
/// confirmation fails the bound is widened upward one step at a time.
inline BoundResult upper_bound(const PatternMatrix& m, const BoundsOptions& o = {}) {
  detail::require_wide(m);
  std::vector<detail::Evaluation> evals;
  auto eval = [&](std::size_t r, std::uint64_t salt) {
    return detail::evaluate_sufficient(m, r, o, salt);
  };
  auto out = detail::bisect(m, eval, evals);

  // Confirmation at the returned value: reuse the bisection's verdict at
  // that rank and re-verify its witness independently.
  auto confirmed_at = [&](std::size_t r, const detail::Evaluation* e) {
    if (r >= m.rows()) return true;
    if (!e || !e->step.satisfied) return false;
    if (e->verdict.trivial) return true;
    if (!e->verdict.witness || !verify_witness(m, m.rows() - r, *e->verdict.witness)) return false;
    out.witness = e->verdict.witness;
    return true;
  };
  const detail::Evaluation* at_value = nullptr;
  for (const auto& e : evals)
    if (e.step.r_mid == out.value) at_value = &e;

  std::uint64_t salt = 1;
  std::optional<detail::Evaluation> fresh;
  if (!at_value) {
    fresh = eval(out.value, salt++);
    fresh->step.confirmation = true;
    out.trace.push_back(fresh->step);
    at_value = &*fresh;
  }
  while (!confirmed_at(out.value, at_value)) {
    out.repaired = true;
    ++out.value;
    fresh = eval(out.value, salt++);
    fresh->step.confirmation = true;
    out.trace.push_back(fresh->step);
    at_value = &*fresh;
  }
  return out;
}

/// Same bisection with the necessary condition. A returned value r > 0 is
/// backed by a violating row subset at rank r - 1 that is re-verified
/// exhaustively; if it does not re-verify the bound is lowered.
inline BoundResult lower_bound(const PatternMatrix& m, const BoundsOptions& o = {}) {
  detail::require_wide(m);
  std::vector<detail::Evaluation> evals;
  auto eval = [&](std::size_t r, std::uint64_t salt) {
    return detail::evaluate_necessary(m, r, o, salt);
  };
  auto out = detail::bisect(m, eval, evals);

  auto confirmed_below = [&](std::size_t value, const detail::Evaluation* e) {
    if (value == 0) return true;
    if (!e || e->step.satisfied || !e->verdict.counterexample ||
        e->verdict.counterexample->row_subsets.empty())
      return false;
    const auto k = m.rows() - (value - 1);
    const auto& rows = e->verdict.counterexample->row_subsets.front();
    if (!verify_violation(m, k, rows)) return false;
    out.violation = rows;
    return true;
  };
  const detail::Evaluation* below = nullptr;
  for (const auto& e : evals)
    if (out.value > 0 && e.step.r_mid == out.value - 1) below = &e;

  std::uint64_t salt = 1;
  std::optional<detail::Evaluation> fresh;
  if (out.value > 0 && !below) {
    fresh = eval(out.value - 1, salt++);
    fresh->step.confirmation = true;
    out.trace.push_back(fresh->step);
    below = &*fresh;
  }
  while (!confirmed_below(out.value, below)) {
    out.repaired = true;
    --out.value;
    if (out.value == 0) break;
    fresh = eval(out.value - 1, salt++);
    fresh->step.confirmation = true;
    out.trace.push_back(fresh->step);
    below = &*fresh;
  }
  return out;
}

inline RankBounds rank_bounds(const PatternMatrix& m, const BoundsOptions& o = {}) {
  RankBounds b;
  b.options = o;
  b.grank_bar = generic_rank(bar_pattern(m));
  b.upper_detail = upper_bound(m, o);
  b.lower_detail = lower_bound(m, o);
  b.upper = b.upper_detail.value;
  b.lower = b.lower_detail.value;
  b.consistent = b.lower <= b.upper && b.upper <= b.grank_bar;
  return b;
}

}  // namespace glrmc
