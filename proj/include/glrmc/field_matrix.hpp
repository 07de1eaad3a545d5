#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "glrmc/error.hpp"

namespace glrmc {

inline constexpr std::uint64_t kDefaultPrime = 2147483647;  // 2^31 - 1

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t acc = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1) acc = mulmod(acc, base, p);
    base = mulmod(base, base, p);
    exp >>= 1;
  }
  return acc;
}

}  // namespace detail

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    auto x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// GF(p) for a prime p < 2^63, validated once at construction.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p = kDefaultPrime) : p_(p) {
    if (p >= (1ULL << 63) || !is_prime(p))
      throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not a supported prime");
  }

  std::uint64_t prime() const noexcept { return p_; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const auto s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return detail::mulmod(a, b, p_); }
  std::uint64_t inv(std::uint64_t a) const {
    if (a == 0) throw Error(ErrorCode::InvalidArgument, "inverse of zero");
    return detail::powmod(a, p_ - 2, p_);
  }
  /// Signed integer into [0, p).
  std::uint64_t from_int(long long v) const {
    const auto r = static_cast<long long>(v % static_cast<long long>(p_));
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(p_) : r);
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t p_;
};

/// Dense row-major matrix over GF(p).
class FieldMatrix {
 public:
  FieldMatrix(std::size_t rows, std::size_t cols, PrimeField field)
      : rows_(rows), cols_(cols), field_(field), data_(rows * cols, 0) {}

  FieldMatrix(std::size_t rows, std::size_t cols, PrimeField field, std::vector<std::uint64_t> data)
      : rows_(rows), cols_(cols), field_(field), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
      throw Error(ErrorCode::DimensionMismatch, "entry count does not match rows*cols");
    for (auto v : data_)
      if (v >= field_.prime()) throw Error(ErrorCode::InvalidArgument, "entry outside [0, p)");
  }

  static FieldMatrix identity(std::size_t n, PrimeField field) {
    FieldMatrix m(n, n, field);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const PrimeField& field() const noexcept { return field_; }
  const std::vector<std::uint64_t>& data() const noexcept { return data_; }

  std::uint64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::uint64_t at(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw Error(ErrorCode::IndexOutOfRange, "field matrix entry");
    return data_[r * cols_ + c];
  }
  void set(std::size_t r, std::size_t c, std::uint64_t v) {
    if (r >= rows_ || c >= cols_) throw Error(ErrorCode::IndexOutOfRange, "field matrix entry");
    if (v >= field_.prime()) throw Error(ErrorCode::InvalidArgument, "entry outside [0, p)");
    data_[r * cols_ + c] = v;
  }

  FieldMatrix select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    FieldMatrix out(rows.size(), cols.size(), field_);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) out.data_[i * cols.size() + j] = at(rows[i], cols[j]);
    return out;
  }

  FieldMatrix transposed() const {
    FieldMatrix out(cols_, rows_, field_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out.data_[c * rows_ + r] = (*this)(r, c);
    return out;
  }

  friend FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.cols_ != b.rows_ || !(a.field_ == b.field_))
      throw Error(ErrorCode::DimensionMismatch, "matrix product shape or field mismatch");
    const auto& f = a.field_;
    FieldMatrix out(a.rows_, b.cols_, f);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const auto aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          auto& o = out.data_[i * b.cols_ + j];
          o = f.add(o, f.mul(aik, b(k, j)));
        }
      }
    return out;
  }

  bool is_zero() const {
    for (auto v : data_)
      if (v) return false;
    return true;
  }

  friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

 private:
  friend struct RowEchelon;
  std::size_t rows_;
  std::size_t cols_;
  PrimeField field_;
  std::vector<std::uint64_t> data_;
};

/// Reduced row echelon form with the pivot column of each nonzero row.
struct RowEchelon {
  FieldMatrix reduced;
  std::vector<std::size_t> pivots;

  explicit RowEchelon(FieldMatrix a) : reduced(std::move(a)) {
    auto& m = reduced;
    const auto& f = m.field_;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols_ && row < m.rows_; ++col) {
      std::size_t sel = row;
      while (sel < m.rows_ && m(sel, col) == 0) ++sel;
      if (sel == m.rows_) continue;
      if (sel != row)
        for (std::size_t c = 0; c < m.cols_; ++c)
          std::swap(m.data_[sel * m.cols_ + c], m.data_[row * m.cols_ + c]);
      const auto inv = f.inv(m(row, col));
      for (std::size_t c = col; c < m.cols_; ++c)
        m.data_[row * m.cols_ + c] = f.mul(m(row, c), inv);
      for (std::size_t r = 0; r < m.rows_; ++r) {
        if (r == row) continue;
        const auto factor = m(r, col);
        if (factor == 0) continue;
        for (std::size_t c = col; c < m.cols_; ++c)
          m.data_[r * m.cols_ + c] = f.sub(m(r, c), f.mul(factor, m(row, c)));
      }
      pivots.push_back(col);
      ++row;
    }
  }

  std::size_t rank() const noexcept { return pivots.size(); }
};

inline std::size_t field_rank(const FieldMatrix& a) { return RowEchelon(a).rank(); }

/// Rows form a basis of {q : q * A = 0}.
inline FieldMatrix left_null_space(const FieldMatrix& a) {
  const RowEchelon e(a.transposed());  // m x n; null space of A^T
  const auto n = a.rows();
  const auto& f = a.field();
  std::vector<char> is_pivot(n, 0);
  for (auto p : e.pivots) is_pivot[p] = 1;
  FieldMatrix out(n - e.rank(), n, f);
  std::size_t out_row = 0;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    out.set(out_row, free, 1);
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
      out.set(out_row, e.pivots[i], f.neg(e.reduced(i, free)));
    ++out_row;
  }
  return out;
}

/// Rows form a basis of {x : A x = 0}.
inline FieldMatrix right_null_space(const FieldMatrix& a) { return left_null_space(a.transposed()); }

inline std::optional<FieldMatrix> inverse(const FieldMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
  const auto n = a.rows();
  std::vector<std::uint64_t> aug;
  aug.reserve(n * 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.push_back(a(r, c));
    for (std::size_t c = 0; c < n; ++c) aug.push_back(r == c ? 1 : 0);
  }
  const RowEchelon e(FieldMatrix(n, 2 * n, a.field(), std::move(aug)));
  if (e.rank() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  FieldMatrix out(n, n, a.field());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out.set(r, c, e.reduced(r, n + c));
  return out;
}

/// A particular solution of A x = b (free variables zero), or nullopt when
/// rank(A) < rank([A | b]).
inline std::optional<std::vector<std::uint64_t>> solve(const FieldMatrix& a,
                                                       const std::vector<std::uint64_t>& b) {
  if (b.size() != a.rows()) throw Error(ErrorCode::DimensionMismatch, "rhs length");
  std::vector<std::uint64_t> aug;
  aug.reserve(a.rows() * (a.cols() + 1));
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug.push_back(a(r, c));
    aug.push_back(b[r]);
  }
  const RowEchelon e(FieldMatrix(a.rows(), a.cols() + 1, a.field(), std::move(aug)));
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  std::vector<std::uint64_t> x(a.cols(), 0);
  for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.reduced(i, a.cols());
  return x;
}

}  // namespace glrmc
