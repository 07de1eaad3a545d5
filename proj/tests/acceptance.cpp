// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "glrmc/cli.hpp"
#include "glrmc/glrmc.hpp"
#include "support.hpp"

using namespace glrmc;
using test::fixture;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

Outcome fail(std::string why) { return {false, std::move(why)}; }

const BasisSampler kExhaustive = BasisSampler::exhaustive();

Outcome examples() {
  std::ostringstream log;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) log << what << "; ";
  };
  const auto t0 = Clock::now();
  expect(glrmc_k1(fixture("example1.pat"), kExhaustive).status == Status::Feasible, "example 1 M");
  expect(glrmc_k1(fixture("example1-prime.pat"), kExhaustive).status == Status::Infeasible,
         "example 1 M'");
  expect(glrmc_k1(fixture("example2.pat"), kExhaustive).status == Status::Feasible, "example 2");
  const auto m3 = fixture("example3.pat");
  const auto suff = glrmc_k_sufficient(m3, 2, kExhaustive);
  const auto nec = glrmc_k_necessary(m3, 2, kExhaustive, kExhaustive);
  expect(suff.status != Status::SufficientHolds && nec.status == Status::NecessaryFails,
         "example 3 verdict");
  const auto relaxed = with_basis_columns(m3, ColumnSet{0});
  const auto c2 = lemma8_S_nonempty(relaxed, ColumnSet{0}, 1);
  const auto c4 = lemma8_S_nonempty(relaxed, ColumnSet{0}, 3);
  expect(c2.rho == 1 && c2.nonempty, "rho_2");
  expect(c4.rho == 2 && !c4.nonempty, "rho_4");
  expect(seconds_since(t0) < 4.0, "too slow");
  const auto s = log.str();
  return s.empty() ? Outcome{true, "5 examples match"} : fail(s);
}

Outcome table_reproduction() {
  const auto t0 = Clock::now();
  const char* files[] = {"M1.pat", "M2.pat", "M3.pat"};
  const bool rank2[] = {true, true, false};
  const std::size_t upper[] = {3, 3, 3};
  const std::size_t lower[] = {2, 2, 3};
  std::ostringstream log;
  std::size_t worst = 100;
  for (int i = 0; i < 3; ++i) {
    const auto m = fixture(files[i]);
    const auto n = m.rows();
    OracleOptions o;
    o.trials = 100;
    const auto v3 = oracle_feasible(m, n - 3, o);
    const auto v2 = oracle_feasible(m, n - 2, o);
    if (v3.status != Status::Feasible) log << files[i] << " rank<=3 " << to_string(v3.status) << "; ";
    if (v2.status != (rank2[i] ? Status::Feasible : Status::Infeasible))
      log << files[i] << " rank<=2 " << to_string(v2.status) << "; ";
    BoundsOptions ex;
    ex.mode = SamplerMode::Exhaustive;
    const auto b = rank_bounds(m, ex);
    if (b.upper != upper[i] || b.lower != lower[i])
      log << files[i] << " exhaustive bounds [" << b.lower << "," << b.upper << "]; ";
    std::size_t matched = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      BoundsOptions r;
      r.seed = seed;
      const auto rb = rank_bounds(m, r);
      matched += rb.upper == upper[i] && rb.lower == lower[i];
    }
    worst = std::min(worst, matched);
    if (matched < 95) log << files[i] << " randomized " << matched << "/100; ";
  }
  const auto secs = seconds_since(t0);
  if (secs > 10.0) log << "took " << secs << " s; ";
  const auto s = log.str();
  return s.empty() ? Outcome{true, "randomized agreement >= " + std::to_string(worst) + "/100"}
                   : fail(s);
}

Outcome cross_implementation() {
  const auto t0 = Clock::now();
  Rng rng(derive_seed(kDefaultSeed, {3}));
  std::size_t bases = 0, mismatches = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto n = 3 + rng.below(3);
    const auto m = 4 + rng.below(3);
    if (m < n) continue;
    const auto p = test::random_pattern(rng, n, m, 0.45, 0.3);
    for_each_combination<ColumnSet>(m, n - 1, [&](const ColumnSet& basis) {
      if (!is_preservable_basis(p, basis, 1)) return false;
      ++bases;
      if (k1_conditions_hold(p, basis).holds != k1_conditions_hold_setwise(p, basis).holds) {
        ++mismatches;
        std::cerr << "mismatch:\n" << p.to_text() << "basis " << basis.to_string() << "\n";
      }
      return false;
    });
  }
  const auto secs = seconds_since(t0);
  if (mismatches || secs > 60.0)
    return fail(std::to_string(mismatches) + " mismatches, " + std::to_string(secs) + " s");
  return {true, std::to_string(bases) + " preservable bases, 0 mismatches"};
}

Outcome oracle_sweep() {
  const auto t0 = Clock::now();
  std::size_t cases = 0, mismatches = 0;
  auto compare = [&](const PatternMatrix& p, std::uint64_t seed) {
    ++cases;
    const auto exact = glrmc_k1(p, kExhaustive).status;
    OracleOptions o;
    o.seed = seed;
    const auto oracle = oracle_feasible(p, 1, o).status;
    if (exact != oracle) {
      ++mismatches;
      std::cerr << "oracle mismatch (" << to_string(exact) << " vs " << to_string(oracle) << "):\n"
                << p.to_text();
    }
  };
  for (std::size_t idx = 0; idx < 729; ++idx) compare(test::pattern_from_index(2, 3, idx), idx);
  Rng rng(derive_seed(kDefaultSeed, {4}));
  for (int t = 0; t < 2000; ++t) {
    const auto p = test::random_pattern(rng, 3, 4, 0.45, 0.3);
    compare(p, derive_seed(kDefaultSeed, {4, static_cast<std::uint64_t>(t)}));
  }
  const auto secs = seconds_since(t0);
  if (mismatches || secs > 300.0)
    return fail(std::to_string(mismatches) + " mismatches over " + std::to_string(cases));
  return {true, std::to_string(cases) + " patterns agree"};
}

Outcome conjecture_harness() {
  Rng rng(derive_seed(kDefaultSeed, {5}));
  std::size_t holds = 0, candidates = 0, exact = 0;
  for (int t = 0; t < 2000; ++t) {
    const auto p = test::random_pattern(rng, 4, 5, 0.5, 0.3);
    const auto nec = glrmc_k_necessary(p, 2, kExhaustive, kExhaustive);
    if (nec.status == Status::NecessaryFails) continue;
    ++holds;
    OracleOptions o;
    o.seed = derive_seed(kDefaultSeed, {5, static_cast<std::uint64_t>(t)});
    const auto v = oracle_feasible(p, 2, o);
    if (v.status == Status::Infeasible) {
      ++candidates;
      exact += !v.modulo_conjecture;
      std::cerr << "counterexample candidate #" << t << " (oracle seed " << o.seed
                << (v.modulo_conjecture ? ", search only" : ", exact") << "):\n"
                << p.to_text();
    }
  }
  return {true, std::to_string(candidates) + " candidates (" + std::to_string(exact) + " exact) among " +
                    std::to_string(holds) + " patterns passing the necessary condition"};
}

FieldMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c, const PrimeField& f) {
  FieldMatrix m(r, c, f);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rng.below(f.prime()));
  return m;
}

Outcome linear_algebra() {
  const PrimeField f(kDefaultPrime);
  Rng rng(derive_seed(kDefaultSeed, {6}));
  std::size_t l6 = 0, l7 = 0;
  for (int t = 0; t < 500; ++t) {
    // rank n-1 with a sparse dependency so some q_j vanish
    const auto n = 2 + rng.below(5), m = n + rng.below(3);
    const auto base = random_matrix(rng, n - 1, m, f);
    auto mix = FieldMatrix(n, n - 1, f);
    for (std::size_t r = 0; r + 1 < n; ++r) mix.set(r, r, 1);
    for (std::size_t c = 0; c + 1 < n; ++c)
      if (rng.below(2)) mix.set(n - 1, c, 1 + rng.below(f.prime() - 1));
    const auto a = mix * base;
    if (field_rank(a) == n - 1 && !null_vector_support_holds(a)) return fail("left null vector check, instance " + std::to_string(t));
    ++l6;
  }
  for (int t = 0; t < 500; ++t) {
    const auto n = 2 + rng.below(5), r = 1 + rng.below(n), extra = 1 + rng.below(3);
    const auto t1 = random_matrix(rng, n, r, f);
    const auto t2 = rng.below(2) ? t1 * random_matrix(rng, r, extra, f) : random_matrix(rng, n, extra, f);
    if (field_rank(t1) == r && !annihilator_rank_holds(t1, t2)) return fail("annihilator check, instance " + std::to_string(t));
    ++l7;
  }
  std::size_t agree = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto p = test::random_pattern(rng, 6, 8, 0.3, 0.0);
    const auto real = sample_realization(p, f, rng.next());
    agree += generic_rank(p) == field_rank(real.values);
  }
  if (agree < 990) return fail("grank agreement " + std::to_string(agree) + "/1000");
  return {true, std::to_string(l6) + "+" + std::to_string(l7) + " identities, grank agreement " +
                    std::to_string(agree) + "/1000"};
}

Outcome determinism() {
  std::vector<RunConfig> configs;
  for (const char* cmd : {"check", "bounds", "oracle"}) {
    RunConfig c;
    c.command = cmd;
    c.patterns = {test::data_path("M2.pat")};
    c.format = OutputFormat::Json;
    c.seed = 17;
    c.trials = 3;
    configs.push_back(c);
  }
  configs[0].k = 2;
  RunConfig e;
  e.command = "experiment";
  e.format = OutputFormat::Csv;
  e.n = 6;
  e.m = 7;
  e.densities = {0.3, 0.7};
  e.patterns_per_cell = 5;
  e.trials = 2;
  e.seed = 17;
  configs.push_back(e);
  for (const auto& c : configs)
    if (run_command(c).render(c.format) != run_command(c).render(c.format)) return fail(c.command + " output differs");
  return {true, "check, bounds, oracle, experiment reproduce"};
}

Outcome experiment_shape() {
  RunConfig c;
  c.command = "experiment";
  c.format = OutputFormat::Csv;
  c.n = 8;
  c.m = 8;
  c.densities = {0.2, 0.4, 0.6, 0.8};
  c.patterns_per_cell = 20;
  c.trials = 2;
  c.budget = 2000;
  const auto csv = run_command(c).render(c.format);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  if (line != kCsvHeader) return fail("header " + line);
  std::vector<double> lo_sum(c.densities.size(), 0), up_sum(c.densities.size(), 0);
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    const auto lower = std::stod(f.at(5)), upper = std::stod(f.at(6));
    if (upper < lower) return fail("upper < lower on row " + line);
    const auto cell = row / c.patterns_per_cell;
    lo_sum[cell] += lower;
    up_sum[cell] += upper;
    ++row;
  }
  if (row != c.densities.size() * c.patterns_per_cell) return fail("row count " + std::to_string(row));
  std::ostringstream means;
  for (std::size_t i = 0; i < c.densities.size(); ++i) {
    means << "[" << lo_sum[i] / 20 << "," << up_sum[i] / 20 << "]";
    if (i && (lo_sum[i] < lo_sum[i - 1] || up_sum[i] < up_sum[i - 1]))
      return fail("cell means not monotone in star density: " + means.str());
  }
  return {true, "cell means " + means.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"AC1 example fidelity", examples},
      {"AC2 fixture table reproduction", table_reproduction},
      {"AC3 matching vs set form", cross_implementation},
      {"AC4 oracle consistency sweep", oracle_sweep},
      {"AC5 conjecture harness", conjecture_harness},
      {"AC6 linear-algebra invariants", linear_algebra},
      {"AC7 determinism", determinism},
      {"AC8 experiment curve shape", experiment_shape},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    std::printf("%s %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", name, seconds_since(t0), o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures ? 1 : 0;
}
