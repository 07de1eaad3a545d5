#pragma once

// Command layer behind the glrmc executable. Each cmd_* takes a validated
// RunConfig and returns a Report; the executable only parses flags and
// prints. Keeping this header-only lets the tests drive the commands
// in-process.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "glrmc/bounds.hpp"
#include "glrmc/error.hpp"
#include "glrmc/feasibility.hpp"
#include "glrmc/oracle.hpp"
#include "glrmc/pattern.hpp"
#include "glrmc/report.hpp"
#include "glrmc/rng.hpp"

namespace glrmc {

enum class OutputFormat { Text, Json, Csv };

constexpr std::string_view to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Text: return "text";
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
  }
  return "text";
}

inline constexpr int kExitDecided = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUnknown = 2;

inline constexpr const char* kCsvHeader = "density,pattern_id,n,m,grank_bar,lower,upper,oracle_rank,ms";

struct RunConfig {
  std::string command;
  std::vector<std::string> patterns;
  std::optional<std::size_t> k;
  /// oracle only: target rank r, i.e. k = n - r.
  std::optional<std::size_t> rank;
  std::size_t t_m = 30;
  std::size_t t_bar = 110;
  std::size_t t_hat = 50;
  std::uint64_t prime = kDefaultPrime;
  std::size_t trials = 5;
  std::uint64_t seed = kDefaultSeed;
  SamplerMode mode = SamplerMode::Randomized;
  OutputFormat format = OutputFormat::Text;
  bool transpose = false;
  std::uint64_t budget = 10'000;
  bool timing = false;
  std::optional<std::string> verify_witness;

  // experiment grid
  std::size_t n = 10;
  std::size_t m = 10;
  std::vector<double> densities{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::size_t patterns_per_cell = 20;
  double zero_fraction = 0.0;
  /// 0 means one worker per hardware thread.
  std::size_t threads = 0;
};

struct Report {
  json document;
  std::string text;
  /// experiment only
  std::string csv;
  int exit_code = kExitDecided;

  std::string render(OutputFormat f) const {
    switch (f) {
      case OutputFormat::Json: return document.dump(2) + "\n";
      case OutputFormat::Csv: return csv;
      case OutputFormat::Text: return text;
    }
    return text;
  }
};

inline void validate(const RunConfig& c) {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); };
  if (c.command != "check" && c.command != "bounds" && c.command != "oracle" &&
      c.command != "experiment")
    bad("unknown command '" + c.command + "'");
  if (c.t_m == 0 || c.t_bar == 0 || c.t_hat == 0 || c.budget == 0 || c.trials == 0)
    bad("budgets, trials and --budget must all be >= 1");
  if (c.k && *c.k == 0) throw Error(ErrorCode::InvalidK, "k must be >= 1");
  if (c.k && c.rank) bad("--k and --rank are mutually exclusive");
  if (c.rank && c.command != "oracle") bad("--rank applies to the oracle command only");
  if (c.format == OutputFormat::Csv && c.command != "experiment")
    bad("csv output is only available for experiment");
  if (c.command == "experiment") {
    if (c.n == 0 || c.m == 0) bad("--n and --m must be >= 1");
    if (c.n > c.m) bad("experiment needs n <= m");
    if (c.densities.empty()) bad("--densities must not be empty");
    for (double d : c.densities)
      if (!(d >= 0.0 && d <= 1.0)) bad("densities must lie in [0, 1]");
    if (!(c.zero_fraction >= 0.0 && c.zero_fraction <= 1.0)) bad("--zero-fraction must lie in [0, 1]");
    if (c.patterns_per_cell == 0) bad("--patterns must be >= 1");
  } else if (!c.verify_witness && c.patterns.size() != 1) {
    bad(c.command + " takes exactly one pattern file");
  }
  if (c.verify_witness && c.command != "check") bad("--verify-witness belongs to check");
  (void)PrimeField(c.prime);
}

inline PatternMatrix load_pattern(const std::string& path, bool transpose_it) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  auto m = parse_pattern(in);
  return transpose_it ? transpose(m) : m;
}

inline json config_to_json(const RunConfig& c, const std::optional<PatternMatrix>& pattern) {
  json j{{"command", c.command},
         {"patterns", c.patterns},
         {"k", detail::optional_to_json(c.k)},
         {"rank", detail::optional_to_json(c.rank)},
         {"tm", c.t_m},
         {"tbar", c.t_bar},
         {"that", c.t_hat},
         {"prime", c.prime},
         {"trials", c.trials},
         {"seed", c.seed},
         {"mode", std::string(to_string(c.mode))},
         {"format", std::string(to_string(c.format))},
         {"transpose", c.transpose},
         {"budget", c.budget}};
  if (pattern) j["pattern"] = *pattern;
  if (c.command == "experiment") {
    j["n"] = c.n;
    j["m"] = c.m;
    j["densities"] = c.densities;
    j["patterns_per_cell"] = c.patterns_per_cell;
    j["zero_fraction"] = c.zero_fraction;
  }
  return j;
}

namespace detail {

using Clock = std::chrono::steady_clock;

inline double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

inline json timing_value(const RunConfig& c, Clock::time_point start) {
  return c.timing ? json(std::round(elapsed_ms(start) * 1000.0) / 1000.0) : json(nullptr);
}

inline BasisSampler command_sampler(const RunConfig& c, std::size_t limit, std::uint64_t stream) {
  return c.mode == SamplerMode::Exhaustive
             ? BasisSampler::exhaustive()
             : BasisSampler::randomized(limit, derive_seed(c.seed, {stream}));
}

inline std::string describe(const Witness& w) {
  std::ostringstream out;
  out << "basis I=" << w.basis.to_string() << " (" << to_string(w.form) << ")\n";
  for (const auto& e : w.columns) {
    out << "  column " << e.column + 1 << ": ";
    if (e.condition == 1)
      out << "no * row in B*\n";
    else if (e.condition == 2)
      out << "? row " << *e.row + 1 << " in B*\n";
    else
      out << "rank test passes, rho=" << e.rho.value_or(0) << "\n";
  }
  return out.str();
}

inline std::string describe_rows(const std::vector<RowSet>& subsets) {
  std::ostringstream out;
  for (std::size_t i = 0; i < subsets.size(); ++i) out << (i ? " " : "") << subsets[i].to_string();
  return out.str();
}

inline std::string describe(const FieldMatrix& x, bool lifted) {
  std::ostringstream out;
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t c = 0; c < x.cols(); ++c) {
      out << (c ? " " : "  ");
      if (lifted)
        out << std::setw(11) << lift(x(r, c), x.field().prime());
      else
        out << std::setw(10) << x(r, c);
    }
    out << "\n";
  }
  return out.str();
}

inline int exit_for(Status s) {
  return s == Status::Unknown ? kExitUnknown : kExitDecided;
}

inline Report verify_report(const RunConfig& c);

}  // namespace detail

/// Exact or randomized feasibility for one pattern: glrmc_k1 at k = 1, the
/// sufficient test then the necessary test for k > 1.
inline Report cmd_check(const RunConfig& c) {
  validate(c);
  if (c.verify_witness) return detail::verify_report(c);
  const auto start = detail::Clock::now();
  const auto m = load_pattern(c.patterns.at(0), c.transpose);
  const auto k = c.k.value_or(1);
  check_k(m, k);
  detail::require_wide(m);

  FeasibilityVerdict verdict;
  json trace = json::object();
  if (k == 1) {
    verdict = glrmc_k1(m, detail::command_sampler(c, c.t_m, 1));
    trace["k1"] = verdict;
  } else {
    const auto suff = glrmc_k_sufficient(m, k, detail::command_sampler(c, c.t_hat, 1));
    trace["sufficient"] = suff;
    verdict.k = k;
    verdict.rng_seed = c.seed;
    if (suff.status == Status::SufficientHolds || suff.status == Status::Feasible) {
      verdict.status = Status::Feasible;
      verdict.trivial = suff.trivial;
      verdict.exhaustive = true;
      verdict.witness = suff.witness;
      verdict.notes = suff.notes;
      trace["necessary"] = nullptr;
    } else {
      const auto nec = glrmc_k_necessary(m, k, detail::command_sampler(c, c.t_bar, 2),
                                         detail::command_sampler(c, c.t_m, 3),
                                         NecessaryOptions{c.budget, false});
      trace["necessary"] = nec;
      verdict.necessary_holds = nec.necessary_holds;
      verdict.notes = nec.notes;
      if (nec.status == Status::NecessaryFails) {
        verdict.status = Status::Infeasible;
        verdict.exhaustive = true;
        verdict.counterexample = nec.counterexample;
      } else {
        verdict.status = Status::Unknown;
        verdict.exhaustive = suff.exhaustive && nec.exhaustive;
        verdict.counterexample = suff.counterexample;
        if (verdict.exhaustive) verdict.notes.push_back("sufficient and necessary conditions disagree");
      }
    }
  }

  Report out;
  out.exit_code = detail::exit_for(verdict.status);
  out.document = json{{"config", config_to_json(c, m)},
                      {"verdict", verdict},
                      {"witness", detail::optional_to_json(verdict.witness)},
                      {"trace", trace},
                      {"timing_ms", detail::timing_value(c, start)}};
  std::ostringstream text;
  text << "pattern " << m.rows() << "x" << m.cols() << ", k=" << k << " (rank <= " << m.rows() - k
       << "), mode " << to_string(c.mode) << "\n";
  text << "verdict: " << to_string(verdict.status) << (verdict.trivial ? " (trivial)" : "") << "\n";
  if (verdict.witness) text << "witness " << detail::describe(*verdict.witness);
  if (verdict.status == Status::Infeasible && verdict.counterexample) {
    if (!verdict.counterexample->row_subsets.empty())
      text << "violating row subsets: " << detail::describe_rows(verdict.counterexample->row_subsets)
           << "\n";
  }
  for (const auto& note : verdict.notes) text << "note: " << note << "\n";
  out.text = text.str();
  return out;
}

/// Algorithm-3 style bracket on the generic minimum completion rank.
inline Report cmd_bounds(const RunConfig& c) {
  validate(c);
  const auto start = detail::Clock::now();
  const auto m = load_pattern(c.patterns.at(0), c.transpose);
  BoundsOptions o;
  o.mode = c.mode;
  o.t_m = c.t_m;
  o.t_bar = c.t_bar;
  o.t_hat = c.t_hat;
  o.seed = c.seed;
  o.inner_budget = c.budget;
  const auto b = rank_bounds(m, o);

  Report out;
  out.exit_code = kExitDecided;
  out.document =
      json{{"config", config_to_json(c, m)},
           {"bounds", json{{"lower", b.lower},
                           {"upper", b.upper},
                           {"grank_bar", b.grank_bar},
                           {"consistent", b.consistent},
                           {"lower_repaired", b.lower_detail.repaired},
                           {"upper_repaired", b.upper_detail.repaired}}},
           {"witness", json{{"upper", detail::optional_to_json(b.upper_detail.witness)},
                            {"lower", detail::optional_to_json(b.lower_detail.violation)}}},
           {"trace", json{{"upper", b.upper_detail.trace}, {"lower", b.lower_detail.trace}}},
           {"timing_ms", detail::timing_value(c, start)}};
  std::ostringstream text;
  text << "pattern " << m.rows() << "x" << m.cols() << ", grank(M-bar)=" << b.grank_bar << "\n";
  text << "bounds: [" << b.lower << ", " << b.upper << "]" << (b.consistent ? "" : " (inconsistent)")
       << "\n";
  if (b.upper_detail.witness)
    text << "upper witness at rank " << b.upper << ": " << detail::describe(*b.upper_detail.witness);
  if (b.lower_detail.violation)
    text << "lower: rank " << b.lower - 1 << " violates the necessary condition on rows "
         << b.lower_detail.violation->to_string() << "\n";
  for (const auto* part : {&b.upper_detail, &b.lower_detail})
    for (const auto& s : part->trace)
      text << "  " << to_string(s.condition) << " r=" << s.r_mid << " -> " << to_string(s.verdict)
           << (s.satisfied ? " (satisfied)" : "") << (s.confirmation ? " [confirmation]" : "") << "\n";
  out.text = text.str();
  return out;
}

/// Finite-field oracle: a single feasibility query when --k or --rank is
/// given, otherwise the minimum completion rank scan.
inline Report cmd_oracle(const RunConfig& c) {
  validate(c);
  const auto start = detail::Clock::now();
  const auto m = load_pattern(c.patterns.at(0), c.transpose);
  detail::require_wide(m);
  OracleOptions o;
  o.prime = c.prime;
  o.trials = c.trials;
  o.seed = c.seed;
  o.budget = c.budget;
  o.skeleton_budget = c.budget;
  const auto n = m.rows();

  Report out;
  std::ostringstream text;
  json verdict_json;
  json witness_json = nullptr;
  json trace = json::array();
  std::optional<OracleVerdict> verdict;

  if (c.k || c.rank) {
    if (c.rank && *c.rank >= n) throw Error(ErrorCode::InvalidK, "target rank must be < n");
    const auto k = c.k ? *c.k : n - *c.rank;
    verdict = oracle_feasible(m, k, o);
    verdict_json = oracle_verdict_to_json(*verdict);
    out.exit_code = detail::exit_for(verdict->status);
    std::size_t agree = 0;
    for (const auto& t : verdict->trials) agree += t.feasible == (verdict->status == Status::Feasible);
    text << "pattern " << n << "x" << m.cols() << ", rank <= " << n - k << " over GF(" << o.prime
         << ")\n";
    text << "verdict: " << to_string(verdict->status);
    if (verdict->status != Status::Unknown)
      text << ", " << agree << "/" << verdict->trials.size() << " trials agree";
    text << (verdict->modulo_conjecture ? " (modulo basis-preservation conjecture)" : "") << "\n";
  } else {
    const auto mr = oracle_min_rank(m, o);
    for (const auto& [r, s] : mr.scan) trace.push_back(json{{"rank", r}, {"status", s}});
    verdict_json = json{{"min_rank", mr.rank}, {"decided", mr.decided},
                        {"grank_bar", generic_rank(bar_pattern(m))}};
    out.exit_code = mr.decided ? kExitDecided : kExitUnknown;
    text << "pattern " << n << "x" << m.cols() << ", oracle minimum completion rank: " << mr.rank
         << (mr.decided ? "" : " (scan stopped on Unknown)") << "\n";
    for (const auto& [r, s] : mr.scan) text << "  rank <= " << r << ": " << to_string(s) << "\n";
    if (mr.rank < n) verdict = oracle_feasible(m, n - mr.rank, o);
  }
  if (verdict && verdict->witness) {
    witness_json = completion_to_json(*verdict->witness, *verdict->witness_realization);
    text << "completion (rank " << field_rank(verdict->witness->values) << ", lifted to (-p/2, p/2]):\n"
         << detail::describe(verdict->witness->values, true);
  }
  out.document = json{{"config", config_to_json(c, m)},
                      {"verdict", verdict_json},
                      {"witness", witness_json},
                      {"trace", trace},
                      {"timing_ms", detail::timing_value(c, start)}};
  out.text = text.str();
  return out;
}

/// Random n x m pattern with exactly round(density * n * m) stars; of the
/// remaining cells a zero_fraction share becomes 0 and the rest ?.
inline PatternMatrix random_pattern(std::size_t n, std::size_t m, double density,
                                    double zero_fraction, std::uint64_t seed) {
  const auto cells = n * m;
  const auto stars = static_cast<std::size_t>(std::llround(density * static_cast<double>(cells)));
  const auto zeros =
      static_cast<std::size_t>(std::llround(zero_fraction * static_cast<double>(cells - stars)));
  std::vector<EntryKind> entries(cells, EntryKind::Query);
  std::fill_n(entries.begin(), stars, EntryKind::Star);
  std::fill_n(entries.begin() + static_cast<std::ptrdiff_t>(stars), zeros, EntryKind::Zero);
  Rng rng(seed);
  rng.shuffle(entries);
  return PatternMatrix(n, m, std::move(entries));
}

struct ExperimentRow {
  double density = 0;
  std::size_t pattern_id = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t grank_bar = 0;
  std::size_t lower = 0;
  std::size_t upper = 0;
  std::optional<std::size_t> oracle_rank;
  double ms = 0;
};

inline ExperimentRow run_experiment_cell(const RunConfig& c, std::size_t density_index,
                                         std::size_t pattern_id) {
  const auto start = detail::Clock::now();
  ExperimentRow row;
  row.density = c.densities[density_index];
  row.pattern_id = pattern_id;
  row.n = c.n;
  row.m = c.m;
  const auto cell_seed = derive_seed(c.seed, {density_index, pattern_id});
  const auto pattern = random_pattern(c.n, c.m, row.density, c.zero_fraction, cell_seed);
  BoundsOptions o;
  o.mode = c.mode;
  o.t_m = c.t_m;
  o.t_bar = c.t_bar;
  o.t_hat = c.t_hat;
  o.seed = derive_seed(cell_seed, {1});
  o.inner_budget = c.budget;
  const auto b = rank_bounds(pattern, o);
  row.grank_bar = b.grank_bar;
  row.lower = b.lower;
  row.upper = b.upper;
  OracleOptions oo;
  oo.prime = c.prime;
  oo.trials = c.trials;
  oo.seed = derive_seed(cell_seed, {2});
  oo.budget = c.budget;
  oo.skeleton_budget = c.budget;
  try {
    const auto mr = oracle_min_rank(pattern, oo);
    if (mr.decided) row.oracle_rank = mr.rank;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
  }
  row.ms = detail::elapsed_ms(start);
  return row;
}

/// Density sweep. Cells are independent and run on worker threads; rows
/// come out in (density, pattern id) order either way.
inline Report cmd_experiment(const RunConfig& c) {
  validate(c);
  const auto start = detail::Clock::now();
  const auto per = c.patterns_per_cell;
  const auto total = c.densities.size() * per;
  std::vector<ExperimentRow> rows(total);
  std::vector<std::exception_ptr> errors(total);
  auto workers = c.threads ? c.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<std::size_t>(workers, total);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < total;) {
      try {
        rows[i] = run_experiment_cell(c, i / per, i % per + 1);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  Report out;
  std::ostringstream csv;
  json jrows = json::array();
  csv << kCsvHeader << "\n";
  for (const auto& r : rows) {
    csv << r.density << "," << r.pattern_id << "," << r.n << "," << r.m << "," << r.grank_bar << ","
        << r.lower << "," << r.upper << ",";
    if (r.oracle_rank) csv << *r.oracle_rank;
    csv << ",";
    if (c.timing) csv << std::fixed << std::setprecision(3) << r.ms << std::defaultfloat;
    csv << "\n";
    jrows.push_back(json{{"density", r.density},
                         {"pattern_id", r.pattern_id},
                         {"n", r.n},
                         {"m", r.m},
                         {"grank_bar", r.grank_bar},
                         {"lower", r.lower},
                         {"upper", r.upper},
                         {"oracle_rank", detail::optional_to_json(r.oracle_rank)},
                         {"ms", c.timing ? json(r.ms) : json(nullptr)}});
  }
  out.csv = csv.str();
  out.document = json{{"config", config_to_json(c, std::nullopt)},
                      {"rows", jrows},
                      {"timing_ms", detail::timing_value(c, start)}};
  std::ostringstream text;
  text << "density  mean_lower  mean_upper  mean_grank_bar\n";
  for (std::size_t d = 0; d < c.densities.size(); ++d) {
    double lo = 0, up = 0, g = 0;
    for (std::size_t p = 0; p < per; ++p) {
      const auto& r = rows[d * per + p];
      lo += static_cast<double>(r.lower);
      up += static_cast<double>(r.upper);
      g += static_cast<double>(r.grank_bar);
    }
    text << std::fixed << std::setprecision(2) << std::setw(7) << c.densities[d] << std::setw(12)
         << lo / static_cast<double>(per) << std::setw(12) << up / static_cast<double>(per)
         << std::setw(16) << g / static_cast<double>(per) << "\n";
  }
  out.text = text.str();
  return out;
}

namespace detail {

/// Re-checks every witness and counterexample stored in a saved report.
inline Report verify_report(const RunConfig& c) {
  std::ifstream in(*c.verify_witness, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + *c.verify_witness + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("report is not valid JSON: ") + e.what());
  }
  const auto& cfg = doc.at("config");
  if (!cfg.contains("pattern"))
    throw Error(ErrorCode::InvalidArgument, "report carries no pattern to verify against");
  const auto m = pattern_from_json(cfg.at("pattern"));
  const auto command = cfg.at("command").get<std::string>();
  json checks = json::array();
  bool all_ok = true;
  auto record = [&](const std::string& what, bool ok) {
    checks.push_back(json{{"item", what}, {"verified", ok}});
    all_ok = all_ok && ok;
  };

  if (command == "check") {
    const auto v = doc.at("verdict").get<FeasibilityVerdict>();
    if (v.witness) record("witness", verify_witness(m, v.k, *v.witness));
    if (v.status == Status::Infeasible && v.counterexample)
      for (const auto& rows : v.counterexample->row_subsets)
        record("violation " + rows.to_string(),
               v.k == 1 ? glrmc_k1(m, BasisSampler::exhaustive()).status == Status::Infeasible
                        : verify_violation(m, v.k, rows));
  } else if (command == "bounds") {
    const auto& b = doc.at("bounds");
    const auto lower = b.at("lower").get<std::size_t>();
    const auto upper = b.at("upper").get<std::size_t>();
    const auto& w = doc.at("witness");
    if (!w.at("upper").is_null())
      record("upper witness", verify_witness(m, m.rows() - upper, w.at("upper").get<Witness>()));
    if (!w.at("lower").is_null())
      record("lower violation",
             lower > 0 && verify_violation(m, m.rows() - (lower - 1), w.at("lower").get<RowSet>()));
  } else if (command == "oracle") {
    const auto& w = doc.at("witness");
    if (!w.is_null()) {
      const auto real_values = field_matrix_from_json(w.at("realization"));
      const auto x = field_matrix_from_json(w.at("matrix"));
      const Realization real{m, real_values};
      bool stars_ok = true;
      for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t col = 0; col < m.cols(); ++col) {
          const bool star = m(r, col) == EntryKind::Star;
          if (star != (real_values(r, col) != 0)) stars_ok = false;
        }
      record("realization support", stars_ok);
      const auto& v = doc.at("verdict");
      const auto target = v.contains("k") ? m.rows() - v.at("k").get<std::size_t>()
                                          : v.at("min_rank").get<std::size_t>();
      record("completion of rank <= " + std::to_string(target),
             verify_completion(real, x, m.rows() - target));
    }
  } else {
    throw Error(ErrorCode::InvalidArgument, "cannot verify reports of command '" + command + "'");
  }
  if (checks.empty()) record("report contains a witness", false);

  Report out;
  out.exit_code = all_ok ? kExitDecided : kExitError;
  out.document = json{{"config", config_to_json(c, m)},
                      {"verdict", json{{"verified", all_ok}, {"source_command", command}}},
                      {"witness", checks},
                      {"trace", json::array()},
                      {"timing_ms", nullptr}};
  std::ostringstream text;
  for (const auto& ch : checks)
    text << (ch.at("verified").get<bool>() ? "verified: " : "FAILED:   ")
         << ch.at("item").get<std::string>() << "\n";
  text << (all_ok ? "all witnesses re-verify\n" : "verification failed\n");
  out.text = text.str();
  return out;
}

}  // namespace detail

inline Report run_command(const RunConfig& c) {
  if (c.command == "check") return cmd_check(c);
  if (c.command == "bounds") return cmd_bounds(c);
  if (c.command == "oracle") return cmd_oracle(c);
  if (c.command == "experiment") return cmd_experiment(c);
  validate(c);
  return {};
}

}  // namespace glrmc
