#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "glrmc/error.hpp"
#include "glrmc/index_set.hpp"

namespace glrmc {

/// Zero: fixed zero. Star: unknown generic value. Query: missing entry.
enum class EntryKind : std::uint8_t { Zero, Star, Query };

constexpr char to_char(EntryKind kind) {
  switch (kind) {
    case EntryKind::Zero: return '0';
    case EntryKind::Star: return '*';
    case EntryKind::Query: return '?';
  }
  return '0';
}

/// (row, col) pair, 0-based.
using Position = std::pair<std::size_t, std::size_t>;

/// n x m grid over {0, *, ?}. Immutable once built; every transformation
/// returns a new pattern.
class PatternMatrix {
 public:
  PatternMatrix(std::size_t rows, std::size_t cols, EntryKind fill = EntryKind::Zero)
      : rows_(rows), cols_(cols), entries_(rows * cols, fill) {
    check_shape();
  }

  /// Row-major entries.
  PatternMatrix(std::size_t rows, std::size_t cols, std::vector<EntryKind> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    check_shape();
    if (entries_.size() != rows_ * cols_)
      throw Error(ErrorCode::DimensionMismatch, "entry count does not match rows*cols");
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  EntryKind at(std::size_t row, std::size_t col) const {
    if (row >= rows_ || col >= cols_)
      throw Error(ErrorCode::IndexOutOfRange, "entry (" + std::to_string(row + 1) + "," +
                                                  std::to_string(col + 1) + ")");
    return entries_[row * cols_ + col];
  }
  EntryKind operator()(std::size_t row, std::size_t col) const {
    return entries_[row * cols_ + col];
  }

  const std::vector<EntryKind>& entries() const noexcept { return entries_; }

  /// Omega_0, Omega_*, Omega_? in row-major order.
  std::vector<Position> positions(EntryKind kind) const {
    std::vector<Position> out;
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if ((*this)(r, c) == kind) out.emplace_back(r, c);
    return out;
  }

  std::size_t count(EntryKind kind) const {
    std::size_t n = 0;
    for (auto e : entries_) n += (e == kind);
    return n;
  }

  /// Rows j with entry (j, col) == kind: N_{*i} for Star, N_{?i} for Query.
  RowSet rows_with(std::size_t col, EntryKind kind) const {
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < rows_; ++r)
      if (at(r, col) == kind) out.push_back(r);
    return RowSet(std::move(out));
  }
  RowSet star_rows(std::size_t col) const { return rows_with(col, EntryKind::Star); }
  RowSet query_rows(std::size_t col) const { return rows_with(col, EntryKind::Query); }
  /// N_i = N_{*i} u N_{?i}.
  RowSet support_rows(std::size_t col) const { return star_rows(col).set_union(query_rows(col)); }

  bool has_query(const RowSet& rows, const ColumnSet& cols) const {
    for (auto r : rows)
      for (auto c : cols)
        if (at(r, c) == EntryKind::Query) return true;
    return false;
  }

  /// M[rows, :]
  PatternMatrix select_rows(const RowSet& rows) const {
    rows.check_bound(rows_, "row");
    std::vector<EntryKind> e;
    e.reserve(rows.size() * cols_);
    for (auto r : rows)
      for (std::size_t c = 0; c < cols_; ++c) e.push_back((*this)(r, c));
    return PatternMatrix(rows.size(), cols_, std::move(e));
  }

  /// M[:, cols]
  PatternMatrix select_cols(const ColumnSet& cols) const {
    cols.check_bound(cols_, "column");
    std::vector<EntryKind> e;
    e.reserve(rows_ * cols.size());
    for (std::size_t r = 0; r < rows_; ++r)
      for (auto c : cols) e.push_back((*this)(r, c));
    return PatternMatrix(rows_, cols.size(), std::move(e));
  }

  /// One line per row, no separators, trailing newline.
  std::string to_text() const {
    std::string s;
    s.reserve(rows_ * (cols_ + 1));
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) s += to_char((*this)(r, c));
      s += '\n';
    }
    return s;
  }

  friend bool operator==(const PatternMatrix&, const PatternMatrix&) = default;

 private:
  void check_shape() const {
    if (rows_ == 0 || cols_ == 0) throw Error(ErrorCode::Empty, "pattern needs n, m >= 1");
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<EntryKind> entries_;
};

/// Reads the text pattern format: one row per line over {0,*,?}, blanks
/// between symbols ignored, '#' starts a comment running to end of line,
/// blank lines skipped, LF or CRLF.
inline PatternMatrix parse_pattern(std::string_view text) {
  std::vector<EntryKind> entries;
  std::size_t cols = 0;
  std::size_t rows = 0;

  std::size_t pos = 0;
  if (text.substr(0, 3) == "\xEF\xBB\xBF") pos = 3;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const auto line = text.substr(pos, eol - pos);
    pos = eol + 1;

    std::vector<EntryKind> row;
    for (char ch : line) {
      if (ch == '#') break;
      switch (ch) {
        case '0': row.push_back(EntryKind::Zero); break;
        case '*': row.push_back(EntryKind::Star); break;
        case '?': row.push_back(EntryKind::Query); break;
        case ' ':
        case '\t':
        case '\r':
        case '\v':
        case '\f': break;
        default:
          throw ParseError(ErrorCode::IllegalCharacter, rows + 1, row.size() + 1,
                           std::string("illegal character '") + ch + "'");
      }
    }
    if (row.empty()) continue;
    if (rows == 0) {
      cols = row.size();
    } else if (row.size() != cols) {
      throw ParseError(ErrorCode::RaggedRows, rows + 1, row.size(),
                       "expected " + std::to_string(cols) + " entries, found " +
                           std::to_string(row.size()));
    }
    entries.insert(entries.end(), row.begin(), row.end());
    ++rows;
  }
  if (rows == 0) throw ParseError(ErrorCode::Empty, 0, 0, "no data lines");
  return PatternMatrix(rows, cols, std::move(entries));
}

inline PatternMatrix parse_pattern(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_pattern(buf.str());
}

namespace detail {
template <class F>
PatternMatrix map_entries(const PatternMatrix& m, F&& f) {
  std::vector<EntryKind> e(m.entries());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) e[r * m.cols() + c] = f(r, c, m(r, c));
  return PatternMatrix(m.rows(), m.cols(), std::move(e));
}
}  // namespace detail

/// M-bar: every ? becomes 0.
inline PatternMatrix bar_pattern(const PatternMatrix& m) {
  return detail::map_entries(m, [](std::size_t, std::size_t, EntryKind k) {
    return k == EntryKind::Query ? EntryKind::Zero : k;
  });
}

/// M-hat: every ? becomes *.
inline PatternMatrix hat_pattern(const PatternMatrix& m) {
  return detail::map_entries(m, [](std::size_t, std::size_t, EntryKind k) {
    return k == EntryKind::Query ? EntryKind::Star : k;
  });
}

/// M(I): ? entries inside the columns of I become *.
inline PatternMatrix with_basis_columns(const PatternMatrix& m, const ColumnSet& basis) {
  basis.check_bound(m.cols(), "column");
  std::vector<bool> in_basis(m.cols(), false);
  for (auto c : basis) in_basis[c] = true;
  return detail::map_entries(m, [&](std::size_t, std::size_t c, EntryKind k) {
    return (k == EntryKind::Query && in_basis[c]) ? EntryKind::Star : k;
  });
}

inline PatternMatrix transpose(const PatternMatrix& m) {
  std::vector<EntryKind> e(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) e[c * m.rows() + r] = m(r, c);
  return PatternMatrix(m.cols(), m.rows(), std::move(e));
}

}  // namespace glrmc
