#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "glrmc/error.hpp"
#include "glrmc/index_set.hpp"
#include "glrmc/pattern.hpp"

namespace glrmc {

enum class EdgeLabel : std::uint8_t { Star, Query };

/// Which edge labels a matching query may use.
struct LabelSet {
  bool star = true;
  bool query = false;

  static constexpr LabelSet star_only() { return {true, false}; }
  static constexpr LabelSet all() { return {true, true}; }

  constexpr bool allows(EdgeLabel label) const {
    return label == EdgeLabel::Star ? star : query;
  }
};

/// G(M): rows on the left, columns on the right, an edge for every nonzero
/// entry, labelled by its symbol. Adjacency lists are sorted by index so
/// every traversal is deterministic.
class PatternBipartiteGraph {
 public:
  struct Edge {
    std::size_t to;
    EdgeLabel label;
  };

  explicit PatternBipartiteGraph(const PatternMatrix& m)
      : rows_(m.rows()), cols_(m.cols()), row_adj_(m.rows()), col_adj_(m.cols()) {
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) {
        const auto k = m(r, c);
        if (k == EntryKind::Zero) continue;
        const auto label = k == EntryKind::Star ? EdgeLabel::Star : EdgeLabel::Query;
        row_adj_[r].push_back({c, label});
        col_adj_[c].push_back({r, label});
        ++edges_;
      }
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t edge_count() const noexcept { return edges_; }

  const std::vector<Edge>& row_edges(std::size_t row) const { return row_adj_.at(row); }
  const std::vector<Edge>& col_edges(std::size_t col) const { return col_adj_.at(col); }

  std::optional<EdgeLabel> label(std::size_t row, std::size_t col) const {
    for (const auto& e : row_adj_.at(row))
      if (e.to == col) return e.label;
    return std::nullopt;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t edges_ = 0;
  std::vector<std::vector<Edge>> row_adj_;
  std::vector<std::vector<Edge>> col_adj_;
};

inline PatternBipartiteGraph build_graph(const PatternMatrix& m) { return PatternBipartiteGraph(m); }

struct MatchingResult {
  std::size_t cardinality = 0;
  /// (row, col), 0-based, ascending by row.
  std::vector<Position> pairs;
};

/// Hopcroft-Karp on an induced subgraph of a PatternBipartiteGraph. Holds
/// its own scratch state, so one instance per thread; the graph is shared
/// read-only. After solve(), rank_without_row() answers "matching size with
/// one more row deleted" with a single augmenting-path search.
class HopcroftKarp {
 public:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  explicit HopcroftKarp(const PatternBipartiteGraph& graph)
      : graph_(&graph),
        row_active_(graph.rows(), 0),
        col_active_(graph.cols(), 0),
        match_row_(graph.rows(), kNone),
        match_col_(graph.cols(), kNone),
        dist_(graph.rows(), 0),
        cursor_(graph.rows(), 0),
        seen_col_(graph.cols(), 0) {}

  std::size_t solve(const RowSet& rows, const ColumnSet& cols, LabelSet labels) {
    rows.check_bound(graph_->rows(), "row");
    cols.check_bound(graph_->cols(), "column");
    std::fill(row_active_.begin(), row_active_.end(), 0);
    std::fill(col_active_.begin(), col_active_.end(), 0);
    for (auto r : rows) row_active_[r] = 1;
    for (auto c : cols) col_active_[c] = 1;
    labels_ = labels;
    return run();
  }

  std::size_t cardinality() const noexcept { return cardinality_; }

  MatchingResult result() const {
    MatchingResult out;
    out.cardinality = cardinality_;
    for (std::size_t r = 0; r < match_row_.size(); ++r)
      if (match_row_[r] != kNone) out.pairs.emplace_back(r, match_row_[r]);
    return out;
  }

  std::size_t matched_col(std::size_t row) const { return match_row_.at(row); }

  /// Maximum matching size of the last solved subgraph with `row` removed.
  /// Removing the matched edge of `row` frees exactly one column c; any
  /// augmenting path in the smaller graph must end at c, so one alternating
  /// search from c decides between cardinality-1 and cardinality.
  std::size_t rank_without_row(std::size_t row) {
    if (row >= row_active_.size() || !row_active_[row] || match_row_[row] == kNone)
      return cardinality_;
    const std::size_t freed = match_row_[row];
    std::fill(seen_col_.begin(), seen_col_.end(), 0);
    const bool augment = reach_free_row(freed, row);
    return cardinality_ - 1 + (augment ? 1 : 0);
  }

 private:
  bool allowed(std::size_t col, EdgeLabel label) const {
    return col_active_[col] && labels_.allows(label);
  }

  std::size_t run() {
    std::fill(match_row_.begin(), match_row_.end(), kNone);
    std::fill(match_col_.begin(), match_col_.end(), kNone);
    cardinality_ = 0;
    while (bfs()) {
      std::fill(cursor_.begin(), cursor_.end(), 0);
      for (std::size_t r = 0; r < row_active_.size(); ++r)
        if (row_active_[r] && match_row_[r] == kNone && dfs(r)) ++cardinality_;
    }
    return cardinality_;
  }

  bool bfs() {
    constexpr auto kInf = kNone;
    std::deque<std::size_t> queue;
    for (std::size_t r = 0; r < row_active_.size(); ++r) {
      if (row_active_[r] && match_row_[r] == kNone) {
        dist_[r] = 0;
        queue.push_back(r);
      } else {
        dist_[r] = kInf;
      }
    }
    bool found = false;
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      for (const auto& e : graph_->row_edges(u)) {
        if (!allowed(e.to, e.label)) continue;
        const auto w = match_col_[e.to];
        if (w == kNone) {
          found = true;
        } else if (dist_[w] == kInf) {
          dist_[w] = dist_[u] + 1;
          queue.push_back(w);
        }
      }
    }
    return found;
  }

  bool dfs(std::size_t u) {
    const auto& edges = graph_->row_edges(u);
    for (auto& i = cursor_[u]; i < edges.size(); ++i) {
      const auto& e = edges[i];
      if (!allowed(e.to, e.label)) continue;
      const auto w = match_col_[e.to];
      if (w == kNone || (dist_[w] == dist_[u] + 1 && dfs(w))) {
        match_row_[u] = e.to;
        match_col_[e.to] = u;
        ++i;
        return true;
      }
    }
    dist_[u] = kNone;
    return false;
  }

  // Alternating search: column -> unmatched edge -> row -> its matched column.
  bool reach_free_row(std::size_t col, std::size_t deleted_row) {
    seen_col_[col] = 1;
    for (const auto& e : graph_->col_edges(col)) {
      const auto r = e.to;
      if (r == deleted_row || !row_active_[r] || !labels_.allows(e.label)) continue;
      const auto next = match_row_[r];
      if (next == kNone) return true;
      if (!seen_col_[next] && reach_free_row(next, deleted_row)) return true;
    }
    return false;
  }

  const PatternBipartiteGraph* graph_;
  LabelSet labels_{};
  std::vector<char> row_active_;
  std::vector<char> col_active_;
  std::vector<std::size_t> match_row_;
  std::vector<std::size_t> match_col_;
  std::vector<std::size_t> dist_;
  std::vector<std::size_t> cursor_;
  std::vector<char> seen_col_;
  std::size_t cardinality_ = 0;
};

inline MatchingResult max_matching(const PatternBipartiteGraph& graph, const RowSet& rows,
                                   const ColumnSet& cols, LabelSet labels = LabelSet::all()) {
  HopcroftKarp hk(graph);
  hk.solve(rows, cols, labels);
  return hk.result();
}

/// Whether ? entries may take part in a generic-rank query.
enum class QueryPolicy { Reject, TreatAsStar };

/// grank of M[rows, cols]. By default a ? inside the block is an error;
/// pass TreatAsStar for M-hat style queries.
inline std::size_t generic_rank(const PatternMatrix& m, const RowSet& rows, const ColumnSet& cols,
                                QueryPolicy policy = QueryPolicy::Reject) {
  rows.check_bound(m.rows(), "row");
  cols.check_bound(m.cols(), "column");
  if (policy == QueryPolicy::Reject && m.has_query(rows, cols))
    throw Error(ErrorCode::QueryEntryPresent,
                "generic_rank over a block containing ? entries; use QueryPolicy::TreatAsStar");
  const PatternBipartiteGraph graph(m);
  HopcroftKarp hk(graph);
  return hk.solve(rows, cols, LabelSet::all());
}

inline std::size_t generic_rank(const PatternMatrix& m, QueryPolicy policy = QueryPolicy::Reject) {
  return generic_rank(m, RowSet::range(m.rows()), ColumnSet::range(m.cols()), policy);
}

}  // namespace glrmc
