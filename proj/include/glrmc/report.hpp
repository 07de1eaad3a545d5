#pragma once

// JSON encoding of every result type. Indices are written 1-based, the
// convention of pattern files and printed sets; decoding maps them back.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "glrmc/bounds.hpp"
#include "glrmc/error.hpp"
#include "glrmc/feasibility.hpp"
#include "glrmc/field_matrix.hpp"
#include "glrmc/oracle.hpp"
#include "glrmc/pattern.hpp"

namespace glrmc {

using json = nlohmann::ordered_json;

namespace detail {

template <class T>
json optional_to_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> optional_from_json(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

inline json index_to_json(std::optional<std::size_t> i) {
  return i ? json(*i + 1) : json(nullptr);
}

inline std::optional<std::size_t> index_from_json(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  const auto v = j.at(key).get<std::size_t>();
  if (v == 0) throw Error(ErrorCode::IndexOutOfRange, std::string(key) + " must be 1-based");
  return v - 1;
}

inline Status status_from_string(const std::string& s) {
  for (auto st : {Status::Feasible, Status::Infeasible, Status::SufficientHolds,
                  Status::NecessaryFails, Status::Unknown})
    if (to_string(st) == s) return st;
  throw Error(ErrorCode::InvalidArgument, "unknown status '" + s + "'");
}

}  // namespace detail

template <class Tag>
void to_json(json& j, const IndexSet<Tag>& s) {
  j = s.to_one_based();
}

template <class Tag>
void from_json(const json& j, IndexSet<Tag>& s) {
  s = IndexSet<Tag>::from_one_based(j.get<std::vector<std::size_t>>());
}

inline void to_json(json& j, Status s) { j = std::string(to_string(s)); }
inline void from_json(const json& j, Status& s) { s = detail::status_from_string(j.get<std::string>()); }

inline void to_json(json& j, const PatternMatrix& m) {
  j = json::array();
  auto text = m.to_text();
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i)
    if (text[i] == '\n') {
      j.push_back(text.substr(start, i - start));
      start = i + 1;
    }
}

inline PatternMatrix pattern_from_json(const json& j) {
  std::string text;
  for (const auto& row : j) text += row.get<std::string>() + "\n";
  return parse_pattern(text);
}

inline void to_json(json& j, const ColumnEvidence& e) {
  j = json{{"column", e.column + 1},
           {"condition", e.condition},
           {"row", detail::index_to_json(e.row)},
           {"rho", detail::optional_to_json(e.rho)}};
}

inline void from_json(const json& j, ColumnEvidence& e) {
  e.column = *detail::index_from_json(j, "column");
  e.condition = j.at("condition").get<int>();
  e.row = detail::index_from_json(j, "row");
  e.rho = detail::optional_from_json<std::size_t>(j, "rho");
}

inline void to_json(json& j, const Witness& w) {
  j = json{{"basis", w.basis}, {"form", std::string(to_string(w.form))}, {"columns", w.columns}};
}

inline void from_json(const json& j, Witness& w) {
  w.basis = j.at("basis").get<ColumnSet>();
  const auto form = j.at("form").get<std::string>();
  if (form != "direct" && form != "relaxed")
    throw Error(ErrorCode::InvalidArgument, "unknown basis form '" + form + "'");
  w.form = form == "direct" ? BasisForm::Direct : BasisForm::Relaxed;
  w.columns = j.at("columns").get<std::vector<ColumnEvidence>>();
}

inline void to_json(json& j, const Counterexample& c) {
  j = json{{"basis", detail::optional_to_json(c.basis)},
           {"column", detail::index_to_json(c.column)},
           {"row_subsets", c.row_subsets}};
}

inline void from_json(const json& j, Counterexample& c) {
  c.basis = detail::optional_from_json<ColumnSet>(j, "basis");
  c.column = detail::index_from_json(j, "column");
  c.row_subsets = j.at("row_subsets").get<std::vector<RowSet>>();
}

inline void to_json(json& j, const FeasibilityVerdict& v) {
  j = json{{"status", v.status},
           {"k", v.k},
           {"trivial", v.trivial},
           {"exhaustive", v.exhaustive},
           {"necessary_holds", detail::optional_to_json(v.necessary_holds)},
           {"witness", detail::optional_to_json(v.witness)},
           {"counterexample", detail::optional_to_json(v.counterexample)},
           {"trials_used", v.trials_used},
           {"rng_seed", v.rng_seed},
           {"notes", v.notes}};
}

inline void from_json(const json& j, FeasibilityVerdict& v) {
  v.status = j.at("status").get<Status>();
  v.k = j.at("k").get<std::size_t>();
  v.trivial = j.at("trivial").get<bool>();
  v.exhaustive = j.at("exhaustive").get<bool>();
  v.necessary_holds = detail::optional_from_json<bool>(j, "necessary_holds");
  v.witness = detail::optional_from_json<Witness>(j, "witness");
  v.counterexample = detail::optional_from_json<Counterexample>(j, "counterexample");
  v.trials_used = j.at("trials_used").get<std::size_t>();
  v.rng_seed = j.at("rng_seed").get<std::uint64_t>();
  v.notes = j.at("notes").get<std::vector<std::string>>();
}

inline void to_json(json& j, const TraceStep& s) {
  j = json{{"r_mid", s.r_mid},
           {"condition", std::string(to_string(s.condition))},
           {"verdict", s.verdict},
           {"satisfied", s.satisfied},
           {"randomized", s.randomized},
           {"confirmation", s.confirmation}};
}

inline void from_json(const json& j, TraceStep& s) {
  s.r_mid = j.at("r_mid").get<std::size_t>();
  s.condition = j.at("condition").get<std::string>() == "sufficient" ? BoundCondition::Sufficient
                                                                     : BoundCondition::Necessary;
  s.verdict = j.at("verdict").get<Status>();
  s.satisfied = j.at("satisfied").get<bool>();
  s.randomized = j.at("randomized").get<bool>();
  s.confirmation = j.at("confirmation").get<bool>();
}

inline void to_json(json& j, const BoundResult& b) {
  j = json{{"value", b.value},
           {"repaired", b.repaired},
           {"witness", detail::optional_to_json(b.witness)},
           {"violation", detail::optional_to_json(b.violation)},
           {"trace", b.trace}};
}

inline void from_json(const json& j, BoundResult& b) {
  b.value = j.at("value").get<std::size_t>();
  b.repaired = j.at("repaired").get<bool>();
  b.witness = detail::optional_from_json<Witness>(j, "witness");
  b.violation = detail::optional_from_json<RowSet>(j, "violation");
  b.trace = j.at("trace").get<std::vector<TraceStep>>();
}

inline void to_json(json& j, const FieldMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  j = json{{"prime", m.field().prime()}, {"rows", std::move(rows)}};
}

/// FieldMatrix has no default constructor, so decoding is a plain function.
inline FieldMatrix field_matrix_from_json(const json& j) {
  const PrimeField f(j.at("prime").get<std::uint64_t>());
  const auto& rows = j.at("rows");
  const auto n = rows.size();
  const auto m = n ? rows.at(0).size() : 0;
  std::vector<std::uint64_t> data;
  for (const auto& row : rows) {
    if (row.size() != m) throw Error(ErrorCode::RaggedRows, "field matrix rows differ in length");
    for (const auto& v : row) data.push_back(v.get<std::uint64_t>());
  }
  return FieldMatrix(n, m, f, std::move(data));
}

/// Small signed representative of x: values above p/2 print as x - p.
inline long long lift(std::uint64_t x, std::uint64_t p) {
  return x > p / 2 ? -static_cast<long long>(p - x) : static_cast<long long>(x);
}

inline void to_json(json& j, const OracleTrial& t) {
  j = json{{"feasible", t.feasible},
           {"seed", t.seed},
           {"method", t.method},
           {"basis", detail::optional_to_json(t.basis)},
           {"bases_tried", t.bases_tried},
           {"bases_skipped", t.bases_skipped},
           {"rejected_by", t.rejected_by},
           {"skeletons_tried", t.skeletons_tried},
           {"systems_solved", t.systems_solved},
           {"exact", t.exact}};
}

inline void from_json(const json& j, OracleTrial& t) {
  t.feasible = j.at("feasible").get<bool>();
  t.seed = j.at("seed").get<std::uint64_t>();
  t.method = j.at("method").get<std::string>();
  t.basis = detail::optional_from_json<ColumnSet>(j, "basis");
  t.bases_tried = j.at("bases_tried").get<std::size_t>();
  t.bases_skipped = j.at("bases_skipped").get<std::size_t>();
  t.rejected_by = j.at("rejected_by").get<std::vector<std::size_t>>();
  t.skeletons_tried = j.at("skeletons_tried").get<std::size_t>();
  t.systems_solved = j.at("systems_solved").get<std::size_t>();
  t.exact = j.at("exact").get<bool>();
}

inline json completion_to_json(const Completion& c, const Realization& real) {
  return json{{"basis", c.basis},
              {"rows", detail::optional_to_json(c.rows)},
              {"pattern", real.pattern},
              {"realization", real.values},
              {"matrix", c.values}};
}

/// Verdict fields only; the completion travels separately as the report's
/// witness.
inline json oracle_verdict_to_json(const OracleVerdict& v) {
  return json{{"status", v.status},
              {"k", v.k},
              {"prime", v.prime},
              {"seed", v.seed},
              {"modulo_conjecture", v.modulo_conjecture},
              {"trials", v.trials}};
}

}  // namespace glrmc
