#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "glrmc/assumption.hpp"
#include "glrmc/error.hpp"
#include "glrmc/index_set.hpp"
#include "glrmc/matching.hpp"
#include "glrmc/pattern.hpp"
#include "glrmc/rng.hpp"
#include "glrmc/sampler.hpp"

namespace glrmc {

enum class Status { Feasible, Infeasible, SufficientHolds, NecessaryFails, Unknown };

constexpr std::string_view to_string(Status s) {
  switch (s) {
    case Status::Feasible: return "Feasible";
    case Status::Infeasible: return "Infeasible";
    case Status::SufficientHolds: return "SufficientHolds";
    case Status::NecessaryFails: return "NecessaryFails";
    case Status::Unknown: return "Unknown";
  }
  return "Unknown";
}

/// Why a non-basis column passed.
/// condition 1: no * row of the column lies in B*.
/// condition 2: some ? row of the column lies in B* (that row is `row`).
/// condition 0: certified by the rank-formula test; `rho` is the overlap.
struct ColumnEvidence {
  std::size_t column = 0;
  int condition = 0;
  std::optional<std::size_t> row;
  std::optional<std::size_t> rho;

  friend bool operator==(const ColumnEvidence&, const ColumnEvidence&) = default;
};

/// Direct: the basis columns had no ? entries to begin with.
/// Relaxed: their ? entries were promoted to * (the M(I) substitution).
enum class BasisForm { Direct, Relaxed };

constexpr std::string_view to_string(BasisForm f) {
  return f == BasisForm::Direct ? "direct" : "relaxed";
}

struct Witness {
  ColumnSet basis;
  BasisForm form = BasisForm::Relaxed;
  std::vector<ColumnEvidence> columns;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct Counterexample {
  /// First rejected basis and the column that broke it.
  std::optional<ColumnSet> basis;
  std::optional<std::size_t> column;
  /// Row subsets whose single-row-deficiency subproblem is infeasible.
  std::vector<RowSet> row_subsets;

  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

struct FeasibilityVerdict {
  Status status = Status::Unknown;
  std::size_t k = 1;
  /// grank(M-bar) <= n - k: feasible without looking at any basis.
  bool trivial = false;
  /// Every enumeration behind the verdict was exhaustive.
  bool exhaustive = false;
  /// Set by the necessary-condition test when no violating row subset was found.
  std::optional<bool> necessary_holds;
  std::optional<Witness> witness;
  std::optional<Counterexample> counterexample;
  std::size_t trials_used = 0;
  std::uint64_t rng_seed = 0;
  std::vector<std::string> notes;

  friend bool operator==(const FeasibilityVerdict&, const FeasibilityVerdict&) = default;
};

/// Outcome of the per-column test for one fixed basis.
struct ConditionCheck {
  bool holds = false;
  std::vector<ColumnEvidence> evidence;
  std::optional<std::size_t> violating_column;
};

struct RankFormulaResult {
  bool nonempty = false;
  std::size_t rho = 0;
};

namespace detail {

inline void require_wide(const PatternMatrix& m) {
  if (m.cols() < m.rows())
    throw Error(ErrorCode::DimensionMismatch,
                "pattern has m < n (" + std::to_string(m.cols()) + " < " +
                    std::to_string(m.rows()) + "); transpose it first");
}

inline FeasibilityVerdict trivial_verdict(const AssumptionCheck& a, std::size_t k) {
  FeasibilityVerdict v;
  v.status = Status::Feasible;
  v.k = k;
  v.trivial = true;
  v.exhaustive = true;
  v.notes.push_back(a.diagnostic);
  return v;
}

// Per-column test for a preservable basis (k = 1). `hk` must hold a
// maximum matching of M-hat[:, basis] (graph of M, all labels), which is
// the same block as M(I)[:, I]. Row j is in B* iff deleting it keeps the
// block at rank n-1.
inline ConditionCheck k1_conditions(const PatternMatrix& m, const ColumnSet& basis,
                                    HopcroftKarp& hk) {
  const auto n = m.rows();
  std::vector<char> in_bstar(n, 0);
  for (std::size_t j = 0; j < n; ++j) in_bstar[j] = hk.rank_without_row(j) == n - 1;

  ConditionCheck out;
  out.holds = true;
  for (std::size_t i = 0; i < m.cols(); ++i) {
    if (basis.contains(i)) continue;
    bool star_hit = false;
    for (std::size_t j = 0; j < n && !star_hit; ++j)
      star_hit = m(j, i) == EntryKind::Star && in_bstar[j];
    if (!star_hit) {
      out.evidence.push_back({i, 1, std::nullopt, std::nullopt});
      continue;
    }
    std::optional<std::size_t> certifier;
    for (std::size_t j = 0; j < n && !certifier; ++j)
      if (m(j, i) == EntryKind::Query && in_bstar[j]) certifier = j;
    if (!certifier) {
      out.holds = false;
      out.violating_column = i;
      return out;
    }
    out.evidence.push_back({i, 2, certifier, std::nullopt});
  }
  return out;
}

// Rank-formula test for column i: S_i is nonempty iff
//   |N?i| + grank(M'[J \ N?i, I]) == |Ni| + grank(M'[J \ Ni, I]),
// and rho_i = |Ni| + grank(M'[J \ Ni, I]) - grank(M'[:, I]).
// `hk` works on the graph of M with all labels, so M-hat[:, I] stands in
// for M'[:, I].
inline RankFormulaResult rank_formula(const PatternMatrix& m, const ColumnSet& basis, std::size_t i,
                           std::size_t basis_rank, HopcroftKarp& hk) {
  const auto all_rows = RowSet::range(m.rows());
  const auto queries = m.query_rows(i);
  const auto support = m.support_rows(i);
  const auto lhs = queries.size() + hk.solve(all_rows.set_difference(queries), basis, LabelSet::all());
  const auto rhs = support.size() + hk.solve(all_rows.set_difference(support), basis, LabelSet::all());
  return {lhs == rhs, rhs - basis_rank};
}

}  // namespace detail

/// grank(M-hat[:, I]) == n - k with |I| == n - k.
inline bool is_preservable_basis(const PatternMatrix& m, const ColumnSet& basis, std::size_t k) {
  check_k(m, k);
  basis.check_bound(m.cols(), "column");
  if (basis.size() + k != m.rows())
    throw Error(ErrorCode::WrongBasisSize, "basis has " + std::to_string(basis.size()) +
                                               " columns, expected n - k = " +
                                               std::to_string(m.rows() - k));
  return generic_rank(m, RowSet::range(m.rows()), basis, QueryPolicy::TreatAsStar) ==
         m.rows() - k;
}

/// Matching form of the k = 1 column conditions for a preservable basis.
/// B* is never built; membership is one row-deleted matching query.
inline ConditionCheck k1_conditions_hold(const PatternMatrix& m, const ColumnSet& basis) {
  if (!is_preservable_basis(m, basis, 1))
    throw Error(ErrorCode::NotAPreservableBasis, basis.to_string() + " is not a preservable basis");
  const PatternBipartiteGraph graph(m);
  HopcroftKarp hk(graph);
  hk.solve(RowSet::range(m.rows()), basis, LabelSet::all());
  return detail::k1_conditions(m, basis, hk);
}

/// Set form of the same test: enumerates B (all (n-1)-row subsets K with
/// grank(M(I)[K, I]) = n-1), forms B*, and intersects with N*i and N?i.
/// Independent of the incremental matching path; used to re-verify
/// witnesses.
inline ConditionCheck k1_conditions_hold_setwise(const PatternMatrix& m, const ColumnSet& basis) {
  if (!is_preservable_basis(m, basis, 1))
    throw Error(ErrorCode::NotAPreservableBasis, basis.to_string() + " is not a preservable basis");
  const auto n = m.rows();
  const auto relaxed = with_basis_columns(m, basis);
  std::vector<RowSet> bstar;
  for_each_combination<RowSet>(n, n - 1, [&](const RowSet& rows) {
    if (generic_rank(relaxed, rows, basis) == n - 1) bstar.push_back(rows.complement(n));
    return false;
  });
  RowSet bstar_rows;
  for (const auto& w : bstar) bstar_rows = bstar_rows.set_union(w);

  ConditionCheck out;
  out.holds = true;
  for (std::size_t i = 0; i < m.cols(); ++i) {
    if (basis.contains(i)) continue;
    const auto star_hit = bstar_rows.set_intersection(m.star_rows(i));
    if (star_hit.empty()) {
      out.evidence.push_back({i, 1, std::nullopt, std::nullopt});
      continue;
    }
    const auto query_hit = bstar_rows.set_intersection(m.query_rows(i));
    if (query_hit.empty()) {
      out.holds = false;
      out.violating_column = i;
      return out;
    }
    out.evidence.push_back({i, 2, query_hit[0], std::nullopt});
  }
  return out;
}

/// Exact (exhaustive sampler) or randomized test of rank <= n-1
/// completability. Randomized mode never reports Infeasible.
inline FeasibilityVerdict glrmc_k1(const PatternMatrix& m, const BasisSampler& sampler) {
  detail::require_wide(m);
  const auto assumption = assumption1_holds(m, 1);
  if (!assumption.holds) return detail::trivial_verdict(assumption, 1);

  const auto n = m.rows();
  const PatternBipartiteGraph graph(m);
  HopcroftKarp hk(graph);
  const auto all_rows = RowSet::range(n);

  FeasibilityVerdict v;
  v.k = 1;
  v.rng_seed = sampler.seed;
  v.exhaustive = sampler.is_exhaustive();
  std::size_t preservable = 0;
  v.trials_used = sample_subsets<ColumnSet>(sampler, m.cols(), n - 1, [&](const ColumnSet& basis) {
    if (hk.solve(all_rows, basis, LabelSet::all()) != n - 1) return false;
    ++preservable;
    auto check = detail::k1_conditions(m, basis, hk);
    if (!check.holds) {
      if (!v.counterexample) v.counterexample = Counterexample{basis, check.violating_column, {}};
      return false;
    }
    v.witness = Witness{basis, m.has_query(all_rows, basis) ? BasisForm::Relaxed : BasisForm::Direct,
                        std::move(check.evidence)};
    return true;
  });

  if (v.witness) {
    const auto recheck = k1_conditions_hold_setwise(m, v.witness->basis);
    if (!recheck.holds || recheck.evidence != v.witness->columns)
      throw std::logic_error("k=1 witness failed set-form re-verification");
    v.status = Status::Feasible;
    v.counterexample.reset();
  } else {
    v.status = sampler.is_exhaustive() ? Status::Infeasible : Status::Unknown;
  }
  v.notes.push_back(std::to_string(preservable) + " preservable bases examined");
  return v;
}

/// Rank-formula test of S_i != {} for one column. `relaxed` is M(I): the
/// basis block must be ?-free with full column rank |I|.
inline RankFormulaResult lemma8_S_nonempty(const PatternMatrix& relaxed, const ColumnSet& basis,
                                      std::size_t column) {
  basis.check_bound(relaxed.cols(), "column");
  if (column >= relaxed.cols())
    throw Error(ErrorCode::IndexOutOfRange, "column " + std::to_string(column + 1));
  const auto all_rows = RowSet::range(relaxed.rows());
  if (basis.contains(column))
    throw Error(ErrorCode::PreconditionViolated, "column lies inside the basis");
  if (relaxed.has_query(all_rows, basis))
    throw Error(ErrorCode::PreconditionViolated, "basis block contains ? entries");
  if (generic_rank(relaxed, all_rows, basis) != basis.size())
    throw Error(ErrorCode::PreconditionViolated, "basis block is not of full generic column rank");
  const PatternBipartiteGraph graph(relaxed);
  HopcroftKarp hk(graph);
  return detail::rank_formula(relaxed, basis, column, basis.size(), hk);
}

/// Sufficient condition for rank <= n-k completability: some k-order
/// preservable basis I such that every column outside I passes the
/// rank-formula test on M(I). Never reports Infeasible.
inline FeasibilityVerdict glrmc_k_sufficient(const PatternMatrix& m, std::size_t k,
                                             const BasisSampler& sampler) {
  check_k(m, k);
  detail::require_wide(m);
  const auto assumption = assumption1_holds(m, k);
  if (!assumption.holds) return detail::trivial_verdict(assumption, k);

  const auto n = m.rows();
  const auto width = n - k;
  const PatternBipartiteGraph graph(m);
  HopcroftKarp hk(graph);
  const auto all_rows = RowSet::range(n);

  FeasibilityVerdict v;
  v.k = k;
  v.rng_seed = sampler.seed;
  v.exhaustive = sampler.is_exhaustive();
  v.trials_used = sample_subsets<ColumnSet>(sampler, m.cols(), width, [&](const ColumnSet& basis) {
    if (hk.solve(all_rows, basis, LabelSet::all()) != width) return false;
    Witness w{basis, m.has_query(all_rows, basis) ? BasisForm::Relaxed : BasisForm::Direct, {}};
    for (std::size_t i = 0; i < m.cols(); ++i) {
      if (basis.contains(i)) continue;
      const auto r = detail::rank_formula(m, basis, i, width, hk);
      if (!r.nonempty) {
        if (!v.counterexample) v.counterexample = Counterexample{basis, i, {}};
        return false;
      }
      w.columns.push_back({i, 0, std::nullopt, r.rho});
    }
    v.witness = std::move(w);
    return true;
  });

  if (v.witness) {
    v.status = Status::SufficientHolds;
    v.counterexample.reset();
    v.notes.push_back(std::string("basis form: ") + std::string(to_string(v.witness->form)));
  } else {
    v.status = Status::Unknown;
    v.notes.push_back(sampler.is_exhaustive() ? "no k-order preservable basis satisfies the column test"
                                              : "sample budget exhausted");
  }
  return v;
}

struct NecessaryOptions {
  /// Inner k = 1 tests enumerate exhaustively when C(m, rows-1) is at most this.
  std::uint64_t inner_budget = 10'000;
  /// Stop at the first violating row subset (otherwise collect all of them).
  bool stop_at_first = true;
};

/// Necessary condition: every (n-k+1)-row submatrix must be rank-deficient
/// completable. Reports NecessaryFails only on an exhaustive inner
/// Infeasible; otherwise Unknown with necessary_holds set.
inline FeasibilityVerdict glrmc_k_necessary(const PatternMatrix& m, std::size_t k,
                                            const BasisSampler& row_sampler,
                                            const BasisSampler& inner,
                                            const NecessaryOptions& options = {}) {
  check_k(m, k);
  detail::require_wide(m);
  const auto assumption = assumption1_holds(m, k);
  if (!assumption.holds) return detail::trivial_verdict(assumption, k);

  const auto n = m.rows();
  const auto sub_rows = n - k + 1;
  auto inner_sampler = [&](std::size_t index) {
    if (inner.is_exhaustive() || binomial(m.cols(), sub_rows - 1) <= options.inner_budget)
      return BasisSampler::exhaustive();
    return BasisSampler::randomized(inner.limit, derive_seed(inner.seed, {index}));
  };

  if (k == 1) {
    auto v = glrmc_k1(m, inner_sampler(0));
    if (v.status == Status::Infeasible) {
      v.counterexample = Counterexample{std::nullopt, std::nullopt, {RowSet::range(n)}};
      v.necessary_holds = false;
    }
    v.notes.push_back("k = 1: the necessary condition is the exact test");
    return v;
  }

  FeasibilityVerdict v;
  v.k = k;
  v.rng_seed = row_sampler.seed;
  bool all_exhaustive = row_sampler.is_exhaustive();
  std::size_t skipped = 0;
  std::size_t undecided = 0;
  std::size_t index = 0;
  std::vector<RowSet> violations;
  v.trials_used = sample_subsets<RowSet>(row_sampler, n, sub_rows, [&](const RowSet& rows) {
    const auto sub = m.select_rows(rows);
    const auto s = inner_sampler(index++);
    if (generic_rank(bar_pattern(sub)) + 1 <= sub_rows) {
      ++skipped;
      return false;
    }
    const auto inner_verdict = glrmc_k1(sub, s);
    if (!s.is_exhaustive()) all_exhaustive = false;
    if (inner_verdict.status == Status::Infeasible) {
      violations.push_back(rows);
      return options.stop_at_first;
    }
    if (inner_verdict.status == Status::Unknown) ++undecided;
    return false;
  });

  v.notes.push_back(std::to_string(skipped) + " row subsets trivially feasible");
  if (undecided)
    v.notes.push_back(std::to_string(undecided) + " row subsets undecided by randomized inner test");
  if (!violations.empty()) {
    v.status = Status::NecessaryFails;
    v.necessary_holds = false;
    v.exhaustive = true;  // the violation itself is an exhaustive verdict
    v.counterexample = Counterexample{std::nullopt, std::nullopt, std::move(violations)};
  } else {
    v.status = Status::Unknown;
    v.necessary_holds = true;
    v.exhaustive = all_exhaustive && undecided == 0;
    v.notes.push_back(v.exhaustive ? "necessary condition holds (exhaustive)"
                                   : "no violation found among sampled row subsets");
  }
  return v;
}

/// Recomputes a witness through fresh generic-rank queries: preservable
/// basis plus the per-column test (set form for k = 1, rank formula
/// otherwise).
inline bool verify_witness(const PatternMatrix& m, std::size_t k, const Witness& w) {
  check_k(m, k);
  if (w.basis.size() + k != m.rows()) return false;
  if (!is_preservable_basis(m, w.basis, k)) return false;
  if (k == 1) return k1_conditions_hold_setwise(m, w.basis).holds;
  const auto relaxed = with_basis_columns(m, w.basis);
  for (std::size_t i = 0; i < m.cols(); ++i)
    if (!w.basis.contains(i) && !lemma8_S_nonempty(relaxed, w.basis, i).nonempty) return false;
  return true;
}

/// A violating row subset must make the k = 1 subproblem exhaustively
/// infeasible.
inline bool verify_violation(const PatternMatrix& m, std::size_t k, const RowSet& rows) {
  check_k(m, k);
  if (rows.size() != m.rows() - k + 1) return false;
  return glrmc_k1(m.select_rows(rows), BasisSampler::exhaustive()).status == Status::Infeasible;
}

}  // namespace glrmc
