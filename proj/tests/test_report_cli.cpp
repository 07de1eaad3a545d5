#include <gtest/gtest.h>

#include <sstream>

#include "glrmc/cli.hpp"
#include "support.hpp"

using namespace glrmc;
using test::data_path;

namespace {

RunConfig config(const std::string& command, const std::string& file) {
  RunConfig c;
  c.command = command;
  c.patterns = {data_path(file)};
  c.format = OutputFormat::Json;
  return c;
}

}  // namespace

TEST(Json, IndexSetsAreOneBased) {
  const json j = ColumnSet{0, 2};
  EXPECT_EQ(j.dump(), "[1,3]");
  EXPECT_EQ(j.get<ColumnSet>(), (ColumnSet{0, 2}));
  EXPECT_THROW(json::parse("[0]").get<ColumnSet>(), Error);
}

TEST(Json, VerdictRoundTrip) {
  const auto m = test::fixture("example2.pat");
  const auto v = glrmc_k1(m, BasisSampler::exhaustive());
  const json j = v;
  const auto back = j.get<FeasibilityVerdict>();
  EXPECT_EQ(back.status, v.status);
  ASSERT_TRUE(back.witness);
  EXPECT_EQ(back.witness->basis, v.witness->basis);
  EXPECT_EQ(json(back), j);
}

TEST(Json, BoundResultAndFieldMatrixRoundTrip) {
  BoundsOptions o;
  o.mode = SamplerMode::Exhaustive;
  const auto b = upper_bound(test::fixture("M2.pat"), o);
  EXPECT_EQ(json(b).get<BoundResult>(), b);
  const FieldMatrix x(2, 2, PrimeField(13), {1, 12, 0, 5});
  EXPECT_EQ(field_matrix_from_json(json(x)), x);
  EXPECT_EQ(lift(12, 13), -1);
  EXPECT_EQ(pattern_from_json(json(test::fixture("M1.pat"))), test::fixture("M1.pat"));
}

TEST(Cli, CheckReportsWitnessAndExitCode) {
  auto c = config("check", "example2.pat");
  c.mode = SamplerMode::Exhaustive;
  const auto r = run_command(c);
  EXPECT_EQ(r.exit_code, kExitDecided);
  EXPECT_EQ(r.document.at("verdict").at("status"), "Feasible");
  EXPECT_EQ(r.document.at("witness").at("basis"), json::parse("[1,2]"));
  for (const char* key : {"config", "verdict", "witness", "trace", "timing_ms"})
    EXPECT_TRUE(r.document.contains(key)) << key;
  EXPECT_TRUE(r.document.at("timing_ms").is_null());
}

TEST(Cli, CheckHigherDeficiencyListsViolations) {
  auto c = config("check", "example3.pat");
  c.k = 2;
  c.mode = SamplerMode::Exhaustive;
  const auto r = run_command(c);
  EXPECT_EQ(r.exit_code, kExitDecided);
  EXPECT_EQ(r.document.at("verdict").at("status"), "Infeasible");
}

TEST(Cli, RandomizedInfeasibleIsUnknown) {
  auto c = config("check", "example1-prime.pat");
  const auto r = run_command(c);
  EXPECT_EQ(r.exit_code, kExitUnknown);
}

TEST(Cli, BoundsAndOracleReports) {
  auto b = config("bounds", "M3.pat");
  const auto br = run_command(b);
  EXPECT_EQ(br.document.at("bounds").at("lower"), 3);
  EXPECT_EQ(br.document.at("bounds").at("upper"), 3);
  auto o = config("oracle", "M2.pat");
  o.rank = 2;
  o.trials = 2;
  const auto orep = run_command(o);
  EXPECT_EQ(orep.exit_code, kExitDecided);
  EXPECT_EQ(orep.document.at("verdict").at("status"), "Feasible");
  EXPECT_FALSE(orep.document.at("witness").is_null());
}

TEST(Cli, ErrorsAreExceptions) {
  auto c = config("check", "does-not-exist.pat");
  EXPECT_THROW(run_command(c), Error);
  auto bad = config("check", "example2.pat");
  bad.k = 0;
  EXPECT_THROW(run_command(bad), Error);
  auto oracle = config("oracle", "example2.pat");
  oracle.prime = 11;
  EXPECT_THROW(run_command(oracle), Error);
}

TEST(Cli, JsonOutputIsDeterministic) {
  auto c = config("bounds", "M1.pat");
  c.seed = 3;
  EXPECT_EQ(run_command(c).render(c.format), run_command(c).render(c.format));
}

TEST(Cli, ExperimentCsvShape) {
  RunConfig c;
  c.command = "experiment";
  c.format = OutputFormat::Csv;
  c.n = 5;
  c.m = 6;
  c.densities = {0.0, 0.5, 1.0};
  c.patterns_per_cell = 3;
  c.trials = 2;
  c.threads = 1;
  const auto r = run_command(c);
  std::istringstream in(r.render(c.format));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, kCsvHeader);
  std::size_t rows = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  EXPECT_EQ(rows, 9u);
  EXPECT_EQ(r.render(c.format), run_command(c).render(c.format));
}
