#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "glrmc/assumption.hpp"
#include "glrmc/error.hpp"
#include "glrmc/feasibility.hpp"
#include "glrmc/field_matrix.hpp"
#include "glrmc/groebner.hpp"
#include "glrmc/index_set.hpp"
#include "glrmc/matching.hpp"
#include "glrmc/pattern.hpp"
#include "glrmc/rng.hpp"

namespace glrmc {

/// Concrete values on the * positions; 0 and ? positions hold zero.
struct Realization {
  PatternMatrix pattern;
  FieldMatrix values;

  friend bool operator==(const Realization&, const Realization&) = default;
};

/// A realization with the ? positions filled in.
struct Completion {
  FieldMatrix values;
  /// Columns used as the basis block; empty when the realization itself was
  /// already of low enough rank.
  ColumnSet basis;
  /// Row skeleton when the completion came from the skeleton search.
  std::optional<RowSet> rows;

  friend bool operator==(const Completion&, const Completion&) = default;
};

struct OracleOptions {
  std::uint64_t prime = kDefaultPrime;
  std::size_t trials = 5;
  std::uint64_t seed = kDefaultSeed;
  /// Largest C(m, n-k) the basis enumeration may visit.
  std::uint64_t budget = 10'000;
  /// For k > 1, also run the skeleton search (see detail::try_skeleton)
  /// when C(n, n-k) * C(m, n-k) stays within this many (R, I) pairs.
  std::uint64_t skeleton_budget = 200'000;
  /// For k > 1, decide what the searches above leave open by a Groebner
  /// basis computation per row subset, when the system has at most this
  /// many unknowns (0 disables it).
  std::size_t algebraic_max_unknowns = 20;
  /// S-polynomial reductions allowed per Groebner basis.
  std::size_t algebraic_max_pairs = 5'000;
  /// When every trial is feasible but none produced a GF(p) completion,
  /// keep drawing realizations up to this multiple of `trials`.
  std::size_t witness_trial_factor = 4;
};

struct OracleTrial {
  bool feasible = false;
  std::uint64_t seed = 0;
  std::size_t bases_tried = 0;
  /// Candidates whose random basis block came out rank deficient.
  std::size_t bases_skipped = 0;
  /// rejected_by[i]: bases whose consistency test first failed at column i.
  std::vector<std::size_t> rejected_by;
  std::size_t skeletons_tried = 0;
  /// Row subsets whose polynomial system the algebraic step decided.
  std::size_t systems_solved = 0;
  /// The trial's answer does not rest on the basis-preservation conjecture:
  /// a completion was found, or the algebraic step ruled out every row
  /// subset.
  bool exact = false;
  /// "realization", "basis", "skeleton" or "algebraic" for a feasible
  /// trial; "closure" when solutions exist over an extension of GF(p) but
  /// the point search found none in GF(p) itself.
  std::string method;
  std::optional<ColumnSet> basis;

  friend bool operator==(const OracleTrial&, const OracleTrial&) = default;
};

struct OracleVerdict {
  Status status = Status::Unknown;
  std::size_t k = 1;
  std::uint64_t prime = kDefaultPrime;
  std::uint64_t seed = kDefaultSeed;
  std::vector<OracleTrial> trials;
  /// Completion from the first feasible trial, re-verified before return.
  std::optional<Completion> witness;
  std::optional<Realization> witness_realization;
  /// Infeasible at k > 1 rests on the basis-preservation conjecture because
  /// the algebraic step was skipped in some trial.
  bool modulo_conjecture = false;

  friend bool operator==(const OracleVerdict&, const OracleVerdict&) = default;
};

/// Star values i.i.d. uniform on GF(p) \ {0}.
inline Realization sample_realization(const PatternMatrix& m, const PrimeField& field,
                                      std::uint64_t seed) {
  const auto cells = static_cast<unsigned __int128>(m.rows()) * m.cols();
  if (static_cast<unsigned __int128>(field.prime()) <= cells)
    throw Error(ErrorCode::PrimeTooSmall, "prime " + std::to_string(field.prime()) +
                                              " must exceed n*m = " +
                                              std::to_string(m.rows() * m.cols()));
  Rng rng(seed);
  FieldMatrix values(m.rows(), m.cols(), field);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) == EntryKind::Star) values.set(r, c, rng.between(1, field.prime() - 1));
  return {m, std::move(values)};
}

inline Realization sample_realization(const PatternMatrix& m, std::uint64_t prime,
                                      std::uint64_t seed) {
  return sample_realization(m, PrimeField(prime), seed);
}

/// X matches the realization off the ? positions and has rank <= n - k.
inline bool verify_completion(const Realization& real, const FieldMatrix& x, std::size_t k) {
  const auto& m = real.pattern;
  if (x.rows() != m.rows() || x.cols() != m.cols() || !(x.field() == real.values.field()))
    return false;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) != EntryKind::Query && x(r, c) != real.values(r, c)) return false;
  return k <= m.rows() && field_rank(x) <= m.rows() - k;
}

namespace detail {

inline std::vector<std::size_t> as_vector(const ColumnSet& s) { return {s.begin(), s.end()}; }

/// Tries one basis candidate on a realization. On success x holds the completion.
inline std::optional<std::size_t> try_basis(const PatternMatrix& m, const ColumnSet& basis,
                                            FieldMatrix& x, Rng& rng, bool& skipped) {
  const auto& f = x.field();
  for (auto c : basis)
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (m(r, c) == EntryKind::Query) x.set(r, c, rng.below(f.prime()));
  std::vector<std::size_t> all_rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) all_rows[r] = r;
  const auto cols = as_vector(basis);
  const auto b = x.select(all_rows, cols);
  skipped = field_rank(b) < cols.size();
  if (skipped) return std::nullopt;

  for (std::size_t i = 0; i < m.cols(); ++i) {
    if (basis.contains(i)) continue;
    std::vector<std::size_t> fixed;
    std::vector<std::uint64_t> rhs;
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (m(r, i) != EntryKind::Query) {
        fixed.push_back(r);
        rhs.push_back(x(r, i));
      }
    std::vector<std::size_t> local(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) local[j] = j;
    const auto alpha = solve(b.select(fixed, local), rhs);
    if (!alpha) return i;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (m(r, i) != EntryKind::Query) continue;
      std::uint64_t v = 0;
      for (std::size_t j = 0; j < cols.size(); ++j) v = f.add(v, f.mul(b(r, j), (*alpha)[j]));
      x.set(r, i, v);
    }
  }
  return m.cols();  // sentinel: every column passed
}

/// Skeleton search for one (R, I) pair with |R| = |I| = r. A rank-r matrix
/// with invertible X[R, I] equals X[:, I] * X[R, I]^-1 * X[R, :], so only
/// the ? entries on the cross R x * and * x I are unknown. Each observed
/// entry (j, c) off the cross gives u_j^T K v_c = value, bilinear in the
/// row vector u_j = X[j, I] and the column vector v_c = X[R, c]. Vectors
/// are resolved by propagation: a vector whose equations against resolved
/// partners pin it down uniquely is solved; when nothing is pinned, the
/// most constrained vector takes a random point of its solution space.
inline std::optional<FieldMatrix> try_skeleton(const PatternMatrix& m, const FieldMatrix& real,
                                               const RowSet& rows, const ColumnSet& cols,
                                               Rng& rng) {
  const auto& f = real.field();
  const auto n = m.rows();
  const auto r = cols.size();
  const std::vector<std::size_t> rv(rows.begin(), rows.end());
  const std::vector<std::size_t> cv(cols.begin(), cols.end());

  // left: n x r = X[:, I]; top: r x m = X[R, :]. known flags per entry.
  FieldMatrix left = real.select([&] {
    std::vector<std::size_t> all(n);
    for (std::size_t j = 0; j < n; ++j) all[j] = j;
    return all;
  }(), cv);
  FieldMatrix top = real.select(rv, [&] {
    std::vector<std::size_t> all(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) all[c] = c;
    return all;
  }());
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b)
      if (m(rv[a], cv[b]) == EntryKind::Query) {
        const auto v = rng.below(f.prime());
        left.set(rv[a], b, v);
        top.set(a, cv[b], v);
      }
  const auto core = left.select(rv, [&] {
    std::vector<std::size_t> idx(r);
    for (std::size_t b = 0; b < r; ++b) idx[b] = b;
    return idx;
  }());
  const auto kinv = inverse(core);
  if (!kinv) return std::nullopt;
  const auto& K = *kinv;

  // unknown[j] lists the positions b with left(j, b) unknown (j outside R);
  // likewise for top columns outside I.
  std::vector<std::vector<std::size_t>> row_unknown(n), col_unknown(m.cols());
  std::vector<char> row_done(n, 1), col_done(m.cols(), 1);
  for (std::size_t j = 0; j < n; ++j) {
    if (rows.contains(j)) continue;
    for (std::size_t b = 0; b < r; ++b)
      if (m(j, cv[b]) == EntryKind::Query) row_unknown[j].push_back(b);
    row_done[j] = row_unknown[j].empty();
  }
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (cols.contains(c)) continue;
    for (std::size_t a = 0; a < r; ++a)
      if (m(rv[a], c) == EntryKind::Query) col_unknown[c].push_back(a);
    col_done[c] = col_unknown[c].empty();
  }

  // Linear system for the unknowns of one vector against resolved partners.
  struct System {
    FieldMatrix a;
    std::vector<std::uint64_t> b;
  };
  auto row_weights = [&](std::size_t j) {  // u_j^T K
    std::vector<std::uint64_t> w(r, 0);
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) w[b] = f.add(w[b], f.mul(left(j, a), K(a, b)));
    return w;
  };
  auto col_weights = [&](std::size_t c) {  // K v_c
    std::vector<std::uint64_t> z(r, 0);
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) z[a] = f.add(z[a], f.mul(K(a, b), top(b, c)));
    return z;
  };
  auto column_system = [&](std::size_t c) {
    const auto& unk = col_unknown[c];
    std::vector<std::uint64_t> coeffs, rhs;
    std::size_t eqs = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (rows.contains(j) || !row_done[j] || m(j, c) == EntryKind::Query) continue;
      const auto w = row_weights(j);
      auto value = real(j, c);
      std::size_t u = 0;
      for (std::size_t a = 0; a < r; ++a) {
        if (u < unk.size() && unk[u] == a) {
          coeffs.push_back(w[a]);
          ++u;
        } else {
          value = f.sub(value, f.mul(w[a], top(a, c)));
        }
      }
      rhs.push_back(value);
      ++eqs;
    }
    return System{FieldMatrix(eqs, unk.size(), f, std::move(coeffs)), std::move(rhs)};
  };
  auto row_system = [&](std::size_t j) {
    const auto& unk = row_unknown[j];
    std::vector<std::uint64_t> coeffs, rhs;
    std::size_t eqs = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (cols.contains(c) || !col_done[c] || m(j, c) == EntryKind::Query) continue;
      const auto z = col_weights(c);
      auto value = real(j, c);
      std::size_t u = 0;
      for (std::size_t b = 0; b < r; ++b) {
        if (u < unk.size() && unk[u] == b) {
          coeffs.push_back(z[b]);
          ++u;
        } else {
          value = f.sub(value, f.mul(left(j, b), z[b]));
        }
      }
      rhs.push_back(value);
      ++eqs;
    }
    return System{FieldMatrix(eqs, unk.size(), f, std::move(coeffs)), std::move(rhs)};
  };

  // nullopt: inconsistent. Otherwise the chosen point; `forced` says whether
  // the system had a unique solution.
  auto pick = [&](const System& sys, bool allow_free,
                  bool& forced) -> std::optional<std::optional<std::vector<std::uint64_t>>> {
    auto x = solve(sys.a, sys.b);
    if (!x) return std::nullopt;
    const auto kernel = right_null_space(sys.a);
    forced = kernel.rows() == 0;
    if (!forced && !allow_free) return std::optional<std::vector<std::uint64_t>>{};
    for (std::size_t t = 0; t < kernel.rows(); ++t) {
      const auto coef = rng.below(f.prime());
      for (std::size_t q = 0; q < x->size(); ++q) (*x)[q] = f.add((*x)[q], f.mul(coef, kernel(t, q)));
    }
    return std::optional<std::vector<std::uint64_t>>{std::move(*x)};
  };

  for (;;) {
    bool progress = false;
    bool pending = false;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (col_done[c]) continue;
      pending = true;
      bool forced = false;
      const auto got = pick(column_system(c), false, forced);
      if (!got) return std::nullopt;
      if (!forced) continue;
      for (std::size_t q = 0; q < col_unknown[c].size(); ++q) top.set(col_unknown[c][q], c, (**got)[q]);
      col_done[c] = 1;
      progress = true;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (row_done[j]) continue;
      pending = true;
      bool forced = false;
      const auto got = pick(row_system(j), false, forced);
      if (!got) return std::nullopt;
      if (!forced) continue;
      for (std::size_t q = 0; q < row_unknown[j].size(); ++q) left.set(j, row_unknown[j][q], (**got)[q]);
      row_done[j] = 1;
      progress = true;
    }
    if (!pending) break;
    if (progress) continue;

    // Nothing is pinned down: free the most constrained open vector.
    std::size_t best_eqs = 0;
    std::optional<std::pair<bool, std::size_t>> best;  // (is_column, index)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!col_done[c]) {
        const auto e = column_system(c).b.size();
        if (!best || e > best_eqs) best = std::pair{true, c}, best_eqs = e;
      }
    for (std::size_t j = 0; j < n; ++j)
      if (!row_done[j]) {
        const auto e = row_system(j).b.size();
        if (!best || e > best_eqs) best = std::pair{false, j}, best_eqs = e;
      }
    bool forced = false;
    if (best->first) {
      const auto c = best->second;
      const auto got = pick(column_system(c), true, forced);
      if (!got) return std::nullopt;
      for (std::size_t q = 0; q < col_unknown[c].size(); ++q) top.set(col_unknown[c][q], c, (**got)[q]);
      col_done[c] = 1;
    } else {
      const auto j = best->second;
      const auto got = pick(row_system(j), true, forced);
      if (!got) return std::nullopt;
      for (std::size_t q = 0; q < row_unknown[j].size(); ++q) left.set(j, row_unknown[j][q], (**got)[q]);
      row_done[j] = 1;
    }
  }
  return left * K * top;
}

enum class AlgebraicStatus { Infeasible, Feasible, ClosureOnly, Skipped };

struct AlgebraicOutcome {
  AlgebraicStatus status = AlgebraicStatus::Skipped;
  std::optional<FieldMatrix> completion;
  std::optional<RowSet> rows;
  std::size_t systems_solved = 0;
};

/// Rank <= r completions written as X[j, :] = W_j * X[R, :] for a row set R
/// of size r that spans the row space. Unknowns are W and the ? entries in
/// rows R; each observed entry outside R gives one bilinear equation. A
/// completion exists over the algebraic closure of GF(p) iff some R yields
/// an ideal other than the whole ring.
inline AlgebraicOutcome try_algebraic(const PatternMatrix& m, const FieldMatrix& real, std::size_t r,
                                      Rng& rng, const OracleOptions& opts) {
  using algebra::Monomial;
  using algebra::Poly;
  using algebra::Term;
  const auto& f = real.field();
  const auto n = m.rows();
  const auto cols = m.cols();
  AlgebraicOutcome out;
  std::size_t closure = 0;
  bool skipped = false;
  std::vector<std::size_t> queries(n, 0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t c = 0; c < cols; ++c) queries[j] += m(j, c) == EntryKind::Query;
  // cheapest systems first
  std::vector<std::pair<std::size_t, RowSet>> order;
  for_each_combination<RowSet>(n, r, [&](const RowSet& rows) {
    std::size_t unknowns = 0;
    for (std::size_t j = 0; j < n; ++j)
      unknowns += rows.contains(j) ? queries[j] : (queries[j] < cols ? r : 0);
    order.emplace_back(unknowns, rows);
    return false;
  });
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& entry : order) {
    const auto& rows = entry.second;
    if (closure >= 2) break;
    const std::vector<std::size_t> rv(rows.begin(), rows.end());
    std::size_t next_var = 0;
    // top_var[a][c]: variable for the ? at (rv[a], c)
    std::vector<std::vector<std::optional<std::size_t>>> top_var(r, std::vector<std::optional<std::size_t>>(cols));
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t c = 0; c < cols; ++c)
        if (m(rv[a], c) == EntryKind::Query) top_var[a][c] = next_var++;
    std::vector<std::optional<std::size_t>> w_base(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (rows.contains(j)) continue;
      bool observed = false;
      for (std::size_t c = 0; c < cols && !observed; ++c) observed = m(j, c) != EntryKind::Query;
      if (observed) {
        w_base[j] = next_var;
        next_var += r;
      }
    }
    if (next_var > std::min(opts.algebraic_max_unknowns, algebra::kMaxVariables)) {
      skipped = true;
      continue;
    }
    std::vector<Poly> equations;
    for (std::size_t j = 0; j < n; ++j) {
      if (!w_base[j]) continue;
      for (std::size_t c = 0; c < cols; ++c) {
        if (m(j, c) == EntryKind::Query) continue;
        Poly eq;
        for (std::size_t a = 0; a < r; ++a) {
          const auto w = Monomial::variable(*w_base[j] + a);
          if (top_var[a][c])
            eq.push_back(Term{w * Monomial::variable(*top_var[a][c]), 1});
          else if (const auto v = real(rv[a], c))
            eq.push_back(Term{w, v});
        }
        if (const auto v = real(j, c)) eq.push_back(Term{Monomial{}, f.neg(v)});
        algebra::sort_and_merge(eq, f);
        if (!eq.empty()) equations.push_back(std::move(eq));
      }
    }
    try {
      const auto gb = algebra::groebner(equations, f, opts.algebraic_max_pairs);
      ++out.systems_solved;
      if (gb.unit) continue;
      ++closure;
      algebra::PointSearch ps;
      ps.max_pairs = opts.algebraic_max_pairs;
      const auto point = algebra::find_point(gb.basis, next_var, f, rng, ps);
      if (!point) continue;
      FieldMatrix x(n, cols, f);
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t c = 0; c < cols; ++c)
          x.set(rv[a], c, top_var[a][c] ? (*point)[*top_var[a][c]] : real(rv[a], c));
      for (std::size_t j = 0; j < n; ++j) {
        if (!w_base[j]) continue;
        for (std::size_t c = 0; c < cols; ++c) {
          std::uint64_t v = 0;
          for (std::size_t a = 0; a < r; ++a) v = f.add(v, f.mul((*point)[*w_base[j] + a], x(rv[a], c)));
          x.set(j, c, v);
        }
      }
      out.completion = std::move(x);
      out.rows = rows;
      break;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BudgetExceeded) throw;
      skipped = true;
    }
  }
  if (out.completion)
    out.status = AlgebraicStatus::Feasible;
  else if (closure > 0)
    out.status = AlgebraicStatus::ClosureOnly;
  else
    out.status = skipped ? AlgebraicStatus::Skipped : AlgebraicStatus::Infeasible;
  return out;
}

}  // namespace detail

/// Finite-field search for a completion of rank <= n - k. Each trial draws a
/// realization and walks every (n-k)-column basis candidate in lexicographic
/// order. For k > 1 the skeleton search and then the algebraic step take
/// over when no basis works. The verdict requires all trials to agree.
inline OracleVerdict oracle_feasible(const PatternMatrix& m, std::size_t k,
                                     const OracleOptions& opts = {}) {
  check_k(m, k);
  if (opts.trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  const PrimeField field(opts.prime);
  const auto n = m.rows();
  const auto candidates = binomial(m.cols(), n - k);
  if (candidates > opts.budget)
    throw Error(ErrorCode::BudgetExceeded, "C(" + std::to_string(m.cols()) + "," +
                                               std::to_string(n - k) + ") = " +
                                               std::to_string(candidates) +
                                               " exceeds budget " + std::to_string(opts.budget));

  OracleVerdict out;
  out.k = k;
  out.prime = field.prime();
  out.seed = opts.seed;
  std::size_t feasible_trials = 0;
  bool all_exact = true;
  const auto max_trials = opts.trials * std::max<std::size_t>(1, opts.witness_trial_factor);
  for (std::size_t t = 0; t < max_trials; ++t) {
    if (t >= opts.trials && (out.witness || feasible_trials < t)) break;
    OracleTrial trial;
    trial.seed = derive_seed(opts.seed, {t});
    trial.rejected_by.assign(m.cols(), 0);
    auto real = sample_realization(m, field, trial.seed);
    Rng rng(derive_seed(trial.seed, {0xB}));
    std::optional<Completion> found;

    if (field_rank(real.values) <= n - k) {
      found = Completion{real.values, ColumnSet{}, std::nullopt};
      trial.method = "realization";
    } else if (k < n) {
      for_each_combination<ColumnSet>(m.cols(), n - k, [&](const ColumnSet& basis) {
        ++trial.bases_tried;
        auto x = real.values;
        bool skipped = false;
        const auto fail = detail::try_basis(m, basis, x, rng, skipped);
        if (skipped) {
          ++trial.bases_skipped;
          return false;
        }
        if (*fail < m.cols()) {
          ++trial.rejected_by[*fail];
          return false;
        }
        found = Completion{std::move(x), basis, std::nullopt};
        trial.method = "basis";
        return true;
      });
    }
    const auto r = n - k;
    const auto pairs = binomial(n, r) == UINT64_MAX || binomial(m.cols(), r) == UINT64_MAX
                           ? UINT64_MAX
                           : binomial(n, r) * binomial(m.cols(), r);
    if (!found && k > 1 && r > 0 && pairs <= opts.skeleton_budget) {
      for_each_combination<ColumnSet>(m.cols(), r, [&](const ColumnSet& cols) {
        for_each_combination<RowSet>(n, r, [&](const RowSet& rows) {
          ++trial.skeletons_tried;
          auto x = detail::try_skeleton(m, real.values, rows, cols, rng);
          if (!x || !verify_completion(real, *x, k)) return false;
          found = Completion{std::move(*x), cols, rows};
          trial.method = "skeleton";
          return true;
        });
        return found.has_value();
      });
    }

    bool closure_only = false;
    if (!found && k > 1 && r > 0 && opts.algebraic_max_unknowns > 0) {
      auto alg = detail::try_algebraic(m, real.values, r, rng, opts);
      trial.systems_solved = alg.systems_solved;
      switch (alg.status) {
        case detail::AlgebraicStatus::Feasible:
          if (verify_completion(real, *alg.completion, k)) {
            found = Completion{std::move(*alg.completion), ColumnSet{}, alg.rows};
            trial.method = "algebraic";
          }
          break;
        case detail::AlgebraicStatus::ClosureOnly:
          closure_only = true;
          break;
        case detail::AlgebraicStatus::Infeasible:
          trial.exact = true;
          break;
        case detail::AlgebraicStatus::Skipped:
          break;
      }
    }
    if (k == 1) trial.exact = true;

    if (found) {
      if (!verify_completion(real, found->values, k))
        throw std::logic_error("oracle produced a completion that does not verify");
      trial.feasible = true;
      trial.exact = true;
      if (!found->basis.empty()) trial.basis = found->basis;
      ++feasible_trials;
      if (!out.witness) {
        out.witness = std::move(found);
        out.witness_realization = std::move(real);
      }
    } else if (closure_only) {
      trial.feasible = true;
      trial.exact = true;
      trial.method = "closure";
      ++feasible_trials;
    }
    all_exact = all_exact && trial.exact;
    out.trials.push_back(std::move(trial));
  }

  if (feasible_trials == out.trials.size())
    out.status = out.witness ? Status::Feasible : Status::Unknown;
  else if (feasible_trials == 0)
    out.status = Status::Infeasible;
  else
    out.status = Status::Unknown;
  out.modulo_conjecture = out.status == Status::Infeasible && !all_exact;
  return out;
}

struct OracleRank {
  std::size_t rank = 0;
  /// False when the scan stopped on an Unknown verdict; rank is then the
  /// smallest rank confirmed feasible so far.
  bool decided = true;
  /// (r, verdict) for every rank the scan queried.
  std::vector<std::pair<std::size_t, Status>> scan;
};

/// Descending scan from grank(M-bar): the first rank that is not feasible
/// stops the scan.
inline OracleRank oracle_min_rank(const PatternMatrix& m, const OracleOptions& opts = {}) {
  detail::require_wide(m);
  OracleRank out;
  const auto n = m.rows();
  const auto top = generic_rank(bar_pattern(m));
  out.rank = top;
  for (std::size_t r = top; r-- > 0;) {
    const auto v = oracle_feasible(m, n - r, opts);
    out.scan.emplace_back(r, v.status);
    if (v.status == Status::Feasible) {
      out.rank = r;
      continue;
    }
    out.decided = v.status == Status::Infeasible;
    break;
  }
  return out;
}

/// q_j != 0 exactly when deleting row j leaves a full-row-rank matrix, for
/// A of rank rows-1 with left null vector q.
inline bool null_vector_support_holds(const FieldMatrix& a) {
  const auto n = a.rows();
  if (n == 0 || field_rank(a) != n - 1) return false;
  const auto q = left_null_space(a);
  if (q.rows() != 1 || !(q * a).is_zero()) return false;
  std::vector<std::size_t> cols(a.cols());
  for (std::size_t c = 0; c < cols.size(); ++c) cols[c] = c;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < n; ++r)
      if (r != j) rows.push_back(r);
    const bool full = field_rank(a.select(rows, cols)) == n - 1;
    if ((q(0, j) != 0) != full) return false;
  }
  return true;
}

/// For T1 of full column rank: rank([T1 T2]) == rank(T1) iff Gamma * T2 == 0,
/// Gamma spanning the left null space of T1.
inline bool annihilator_rank_holds(const FieldMatrix& t1, const FieldMatrix& t2) {
  if (t1.rows() != t2.rows()) throw Error(ErrorCode::DimensionMismatch, "T1 and T2 row counts");
  if (field_rank(t1) != t1.cols()) return false;
  std::vector<std::uint64_t> joined;
  for (std::size_t r = 0; r < t1.rows(); ++r) {
    for (std::size_t c = 0; c < t1.cols(); ++c) joined.push_back(t1(r, c));
    for (std::size_t c = 0; c < t2.cols(); ++c) joined.push_back(t2(r, c));
  }
  const FieldMatrix t(t1.rows(), t1.cols() + t2.cols(), t1.field(), std::move(joined));
  const bool low = field_rank(t) == t1.cols();
  const bool annihilated = (left_null_space(t1) * t2).is_zero();
  return low == annihilated;
}

}  // namespace glrmc
