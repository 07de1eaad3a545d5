#pragma once

// Multivariate polynomials over GF(p), Groebner bases in degree reverse
// lexicographic order, and GF(p)-point extraction for small systems.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "glrmc/error.hpp"
#include "glrmc/field_matrix.hpp"
#include "glrmc/rng.hpp"

namespace glrmc::algebra {

inline constexpr std::size_t kMaxVariables = 32;

struct Monomial {
  std::array<std::uint8_t, kMaxVariables> exp{};
  std::uint32_t degree = 0;

  static Monomial variable(std::size_t v, std::uint8_t power = 1) {
    Monomial m;
    m.exp[v] = power;
    m.degree = power;
    return m;
  }

  bool is_one() const noexcept { return degree == 0; }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exp == b.exp; }
};

/// Degree reverse lexicographic: higher total degree first, then the
/// monomial with the smaller exponent in the last differing variable.
inline bool grevlex_greater(const Monomial& a, const Monomial& b) {
  if (a.degree != b.degree) return a.degree > b.degree;
  for (std::size_t v = kMaxVariables; v-- > 0;)
    if (a.exp[v] != b.exp[v]) return a.exp[v] < b.exp[v];
  return false;
}

inline Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  for (std::size_t v = 0; v < kMaxVariables; ++v) {
    const unsigned e = a.exp[v] + b.exp[v];
    if (e > 255) throw Error(ErrorCode::BudgetExceeded, "monomial exponent overflow");
    out.exp[v] = static_cast<std::uint8_t>(e);
  }
  out.degree = a.degree + b.degree;
  return out;
}

inline bool divides(const Monomial& a, const Monomial& b) {
  if (a.degree > b.degree) return false;
  for (std::size_t v = 0; v < kMaxVariables; ++v)
    if (a.exp[v] > b.exp[v]) return false;
  return true;
}

/// b / a; requires divides(a, b).
inline Monomial quotient(const Monomial& b, const Monomial& a) {
  Monomial out;
  for (std::size_t v = 0; v < kMaxVariables; ++v) out.exp[v] = static_cast<std::uint8_t>(b.exp[v] - a.exp[v]);
  out.degree = b.degree - a.degree;
  return out;
}

inline Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial out;
  for (std::size_t v = 0; v < kMaxVariables; ++v) {
    out.exp[v] = std::max(a.exp[v], b.exp[v]);
    out.degree += out.exp[v];
  }
  return out;
}

inline bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t v = 0; v < kMaxVariables; ++v)
    if (a.exp[v] && b.exp[v]) return false;
  return true;
}

struct Term {
  Monomial mono;
  std::uint64_t coef = 0;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Terms sorted by decreasing monomial, no zero coefficients.
using Poly = std::vector<Term>;

inline Poly constant(std::uint64_t c) { return c ? Poly{Term{Monomial{}, c}} : Poly{}; }

inline void sort_and_merge(Poly& p, const PrimeField& f) {
  std::sort(p.begin(), p.end(), [](const Term& a, const Term& b) { return grevlex_greater(a.mono, b.mono); });
  Poly out;
  for (auto& t : p) {
    if (!out.empty() && out.back().mono == t.mono)
      out.back().coef = f.add(out.back().coef, t.coef);
    else
      out.push_back(t);
    if (out.back().coef == 0) out.pop_back();
  }
  p = std::move(out);
}

/// p - c * mono * q.
inline Poly sub_scaled(const Poly& p, std::uint64_t c, const Monomial& mono, const Poly& q,
                       const PrimeField& f) {
  Poly out;
  out.reserve(p.size() + q.size());
  std::size_t i = 0, j = 0;
  while (i < p.size() || j < q.size()) {
    if (j == q.size()) {
      out.push_back(p[i++]);
      continue;
    }
    const Term shifted{q[j].mono * mono, f.neg(f.mul(c, q[j].coef))};
    if (i == p.size() || grevlex_greater(shifted.mono, p[i].mono)) {
      out.push_back(shifted);
      ++j;
    } else if (p[i].mono == shifted.mono) {
      const auto sum = f.add(p[i].coef, shifted.coef);
      if (sum) out.push_back(Term{p[i].mono, sum});
      ++i;
      ++j;
    } else {
      out.push_back(p[i++]);
    }
  }
  return out;
}

inline void make_monic(Poly& p, const PrimeField& f) {
  if (p.empty() || p.front().coef == 1) return;
  const auto inv = f.inv(p.front().coef);
  for (auto& t : p) t.coef = f.mul(t.coef, inv);
}

/// Full reduction of p modulo monic polynomials.
inline Poly normal_form(Poly p, const std::vector<const Poly*>& basis, const PrimeField& f) {
  Poly rest;
  while (!p.empty()) {
    const Poly* divisor = nullptr;
    for (const auto* g : basis)
      if (divides(g->front().mono, p.front().mono)) {
        divisor = g;
        break;
      }
    if (divisor) {
      p = sub_scaled(p, p.front().coef, quotient(p.front().mono, divisor->front().mono), *divisor, f);
      continue;
    }
    // move every leading term no divisor can touch in one pass
    std::size_t keep = 0;
    while (keep < p.size()) {
      bool reducible = false;
      for (const auto* g : basis)
        if (divides(g->front().mono, p[keep].mono)) {
          reducible = true;
          break;
        }
      if (reducible) break;
      rest.push_back(p[keep++]);
    }
    p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(keep));
  }
  return rest;
}

inline Poly normal_form(Poly p, const std::vector<Poly>& basis, const PrimeField& f) {
  std::vector<const Poly*> ptrs;
  ptrs.reserve(basis.size());
  for (const auto& g : basis) ptrs.push_back(&g);
  return normal_form(std::move(p), ptrs, f);
}

struct GroebnerResult {
  /// Reduced, monic; {1} when the ideal is the whole ring.
  std::vector<Poly> basis;
  bool unit = false;
  std::size_t pairs_reduced = 0;
};

/// Buchberger's algorithm with the Gebauer-Moeller pair update and the
/// normal selection strategy. Throws BudgetExceeded past max_pairs
/// S-polynomial reductions.
inline GroebnerResult groebner(std::vector<Poly> generators, const PrimeField& f,
                               std::size_t max_pairs = 20'000) {
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };
  GroebnerResult out;
  std::vector<Poly> g;
  std::vector<char> live;
  std::vector<Pair> pairs;

  auto found_unit = [&] {
    out.basis = {constant(1)};
    out.unit = true;
    return out;
  };
  auto lead = [&](std::size_t i) -> const Monomial& { return g[i].front().mono; };

  auto insert = [&](Poly h) {
    make_monic(h, f);
    const auto hi = g.size();
    g.push_back(std::move(h));
    live.push_back(1);
    const auto& lh = lead(hi);

    std::vector<Pair> fresh;
    for (std::size_t i = 0; i < hi; ++i)
      if (live[i]) fresh.push_back(Pair{i, hi, lcm(lead(i), lh)});
    std::vector<Pair> kept;
    for (std::size_t a = 0; a < fresh.size(); ++a) {
      bool keep = coprime(lead(fresh[a].i), lh);
      if (!keep) {
        keep = true;
        for (std::size_t b = 0; b < fresh.size() && keep; ++b) {
          if (b == a || !divides(fresh[b].lcm, fresh[a].lcm)) continue;
          // among equal lcms keep only the first
          if (fresh[b].lcm == fresh[a].lcm && b > a) continue;
          keep = false;
        }
        for (const auto& k : kept)
          if (keep && divides(k.lcm, fresh[a].lcm)) keep = false;
      }
      if (keep) kept.push_back(fresh[a]);
    }
    std::vector<Pair> next;
    for (const auto& p : pairs) {
      const bool drop = divides(lh, p.lcm) && !(lcm(lead(p.i), lh) == p.lcm) && !(lcm(lh, lead(p.j)) == p.lcm);
      if (!drop) next.push_back(p);
    }
    for (const auto& k : kept)
      if (!coprime(lead(k.i), lh)) next.push_back(k);
    pairs = std::move(next);
    for (std::size_t i = 0; i < hi; ++i)
      if (live[i] && divides(lh, lead(i))) live[i] = 0;
  };
  auto live_basis = [&] {
    std::vector<const Poly*> b;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (live[i]) b.push_back(&g[i]);
    return b;
  };

  for (auto& p : generators) {
    sort_and_merge(p, f);
    auto h = normal_form(std::move(p), live_basis(), f);
    if (h.empty()) continue;
    if (h.front().mono.is_one()) return found_unit();
    insert(std::move(h));
  }

  while (!pairs.empty()) {
    std::size_t best = 0;
    for (std::size_t q = 1; q < pairs.size(); ++q)
      if (grevlex_greater(pairs[best].lcm, pairs[q].lcm)) best = q;
    const auto pair = pairs[best];
    pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));
    if (++out.pairs_reduced > max_pairs)
      throw Error(ErrorCode::BudgetExceeded, "Groebner basis exceeded " + std::to_string(max_pairs) + " pairs");
    auto s = sub_scaled(Poly{}, f.neg(1), quotient(pair.lcm, lead(pair.i)), g[pair.i], f);
    s = sub_scaled(s, 1, quotient(pair.lcm, lead(pair.j)), g[pair.j], f);
    auto h = normal_form(std::move(s), live_basis(), f);
    if (h.empty()) continue;
    if (h.front().mono.is_one()) return found_unit();
    insert(std::move(h));
  }

  // minimal, then reduced
  std::vector<Poly> minimal;
  for (const auto* q : live_basis()) minimal.push_back(*q);
  std::vector<Poly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    auto others = minimal;
    others.erase(others.begin() + static_cast<std::ptrdiff_t>(i));
    const auto& lead = minimal[i].front();
    Poly tail(minimal[i].begin() + 1, minimal[i].end());
    auto nf = normal_form(std::move(tail), others, f);
    nf.insert(nf.begin(), lead);
    reduced.push_back(std::move(nf));
  }
  std::sort(reduced.begin(), reduced.end(),
            [](const Poly& a, const Poly& b) { return grevlex_greater(b.front().mono, a.front().mono); });
  out.basis = std::move(reduced);
  return out;
}

/// Finitely many solutions over the algebraic closure: every variable has
/// a pure power among the leading monomials.
inline bool zero_dimensional(const std::vector<Poly>& basis, std::size_t variables) {
  for (std::size_t v = 0; v < variables; ++v) {
    bool pure = false;
    for (const auto& g : basis) {
      const auto& m = g.front().mono;
      if (m.exp[v] && m.degree == m.exp[v]) {
        pure = true;
        break;
      }
    }
    if (!pure) return false;
  }
  return true;
}

// Dense univariate polynomials, coefficients from x^0 upward.
namespace univariate {

using UPoly = std::vector<std::uint64_t>;

inline void trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline UPoly mod(UPoly a, const UPoly& b, const PrimeField& f) {
  trim(a);
  const auto inv = f.inv(b.back());
  while (a.size() >= b.size()) {
    const auto factor = f.mul(a.back(), inv);
    const auto shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = f.sub(a[shift + i], f.mul(factor, b[i]));
    trim(a);
  }
  return a;
}

inline UPoly mul_mod(const UPoly& a, const UPoly& b, const UPoly& m, const PrimeField& f) {
  if (a.empty() || b.empty()) return {};
  UPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
  return mod(std::move(out), m, f);
}

inline UPoly pow_mod(UPoly base, std::uint64_t e, const UPoly& m, const PrimeField& f) {
  UPoly acc = mod({1}, m, f);
  base = mod(std::move(base), m, f);
  while (e) {
    if (e & 1) acc = mul_mod(acc, base, m, f);
    base = mul_mod(base, base, m, f);
    e >>= 1;
  }
  return acc;
}

inline UPoly gcd(UPoly a, UPoly b, const PrimeField& f) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = mod(a, b, f);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const auto inv = f.inv(a.back());
    for (auto& c : a) c = f.mul(c, inv);
  }
  return a;
}

inline void split_roots(const UPoly& g, const PrimeField& f, Rng& rng, std::vector<std::uint64_t>& out) {
  if (g.size() < 2) return;
  if (g.size() == 2) {
    out.push_back(f.neg(f.mul(g[0], f.inv(g[1]))));
    return;
  }
  const auto p = f.prime();
  if (p == 2) {
    for (std::uint64_t x = 0; x < 2; ++x) {
      std::uint64_t v = 0;
      for (std::size_t i = g.size(); i-- > 0;) v = f.add(f.mul(v, x), g[i]);
      if (v == 0) out.push_back(x);
    }
    return;
  }
  for (;;) {
    const auto delta = rng.below(p);
    auto h = pow_mod({delta, 1}, (p - 1) / 2, g, f);
    if (h.empty()) h = {0};
    h[0] = f.sub(h[0], 1);
    trim(h);
    auto d = gcd(g, h, f);
    if (d.size() > 1 && d.size() < g.size()) {
      split_roots(d, f, rng, out);
      UPoly q(g.size() - d.size() + 1, 0);  // g / d by long division
      UPoly r = g;
      for (std::size_t k = q.size(); k-- > 0;) {
        q[k] = r[k + d.size() - 1];
        for (std::size_t i = 0; i < d.size(); ++i) r[k + i] = f.sub(r[k + i], f.mul(q[k], d[i]));
      }
      split_roots(q, f, rng, out);
      return;
    }
  }
}

/// Distinct roots in GF(p), ascending.
inline std::vector<std::uint64_t> roots(UPoly a, const PrimeField& f, Rng& rng) {
  trim(a);
  if (a.size() < 2) return {};
  const auto xp = pow_mod({0, 1}, f.prime(), a, f);
  UPoly diff = xp;
  if (diff.size() < 2) diff.resize(2, 0);
  diff[1] = f.sub(diff[1], 1);
  trim(diff);
  const auto g = diff.empty() ? gcd(a, {}, f) : gcd(a, diff, f);
  std::vector<std::uint64_t> out;
  split_roots(g, f, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace univariate

/// Minimal polynomial of variable v in the quotient by a zero-dimensional
/// reduced Groebner basis, found as the first linear dependency among the
/// normal forms of 1, x_v, x_v^2, ...
inline univariate::UPoly minimal_polynomial(const std::vector<Poly>& basis, std::size_t v,
                                            const PrimeField& f, std::size_t max_degree = 512) {
  struct Row {
    Poly vec;                            // reduced normal form, leading term = pivot
    std::vector<std::uint64_t> combo;    // coefficients over x_v^0..x_v^d
  };
  std::vector<Row> rows;
  Poly power = constant(1);
  for (std::size_t d = 0; d <= max_degree; ++d) {
    if (d > 0) power = normal_form(sub_scaled(Poly{}, f.neg(1), Monomial::variable(v), power, f), basis, f);
    Poly vec = power;
    std::vector<std::uint64_t> combo(d + 1, 0);
    combo[d] = 1;
    for (bool changed = true; changed && !vec.empty();) {
      changed = false;
      for (const auto& r : rows)
        for (const auto& t : vec)
          if (t.mono == r.vec.front().mono) {
            const auto c = f.mul(t.coef, f.inv(r.vec.front().coef));
            vec = sub_scaled(vec, c, Monomial{}, r.vec, f);
            for (std::size_t i = 0; i < r.combo.size(); ++i) combo[i] = f.sub(combo[i], f.mul(c, r.combo[i]));
            changed = true;
            break;
          }
    }
    if (vec.empty()) {
      univariate::trim(combo);
      return combo;
    }
    rows.push_back(Row{std::move(vec), std::move(combo)});
  }
  throw Error(ErrorCode::BudgetExceeded, "quotient ring dimension exceeds " + std::to_string(max_degree));
}

struct PointSearch {
  std::size_t max_pairs = 20'000;
  std::size_t max_roots = 6;
  std::size_t specialization_tries = 3;
};

/// A GF(p) point of the variety of `generators` in `variables` unknowns,
/// or nullopt when the search finds none (which does not by itself mean
/// the variety has no points over an extension field).
inline std::optional<std::vector<std::uint64_t>> find_point(const std::vector<Poly>& generators,
                                                            std::size_t variables, const PrimeField& f,
                                                            Rng& rng, const PointSearch& opts = {}) {
  const auto gb = groebner(generators, f, opts.max_pairs);
  if (gb.unit) return std::nullopt;
  const auto& basis = gb.basis;

  // Solved when every variable has a linear leading term x_v - a.
  std::vector<std::optional<std::uint64_t>> value(variables);
  for (const auto& g : basis) {
    const auto& m = g.front().mono;
    if (m.degree != 1) continue;
    std::size_t v = 0;
    while (m.exp[v] == 0) ++v;
    if (g.size() == 1)
      value[v] = 0;
    else if (g.size() == 2 && g[1].mono.is_one())
      value[v] = f.neg(g[1].coef);
  }
  std::optional<std::size_t> open;
  for (std::size_t v = 0; v < variables && !open; ++v)
    if (!value[v]) open = v;
  if (!open) {
    std::vector<std::uint64_t> out(variables);
    for (std::size_t v = 0; v < variables; ++v) out[v] = *value[v];
    return out;
  }

  auto with_value = [&](std::size_t v, std::uint64_t a) {
    auto gens = basis;
    Poly lin{Term{Monomial::variable(v), 1}};
    if (a) lin.push_back(Term{Monomial{}, f.neg(a)});
    gens.push_back(std::move(lin));
    return find_point(gens, variables, f, rng, opts);
  };

  if (!zero_dimensional(basis, variables)) {
    // a variable with no pure-power leading monomial is free on some component
    std::size_t v = *open;
    for (std::size_t u = 0; u < variables; ++u) {
      if (value[u]) continue;
      bool pure = false;
      for (const auto& g : basis) {
        const auto& m = g.front().mono;
        pure |= m.exp[u] && m.degree == m.exp[u];
      }
      if (!pure) {
        v = u;
        break;
      }
    }
    for (std::size_t t = 0; t < opts.specialization_tries; ++t)
      if (auto p = with_value(v, rng.below(f.prime()))) return p;
    return std::nullopt;
  }

  const auto mu = minimal_polynomial(basis, *open, f);
  auto rs = univariate::roots(mu, f, rng);
  rng.shuffle(rs);
  if (rs.size() > opts.max_roots) rs.resize(opts.max_roots);
  for (auto a : rs)
    if (auto p = with_value(*open, a)) return p;
  return std::nullopt;
}

}  // namespace glrmc::algebra
