#include <iostream>
#include <map>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "glrmc/cli.hpp"

namespace {

std::uint64_t parse_seed(const std::string& text) {
  if (text == "random") {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  std::size_t used = 0;
  const auto v = std::stoull(text, &used);
  if (used != text.size()) throw glrmc::Error(glrmc::ErrorCode::InvalidArgument, "bad --seed '" + text + "'");
  return v;
}

void add_common(CLI::App* cmd, glrmc::RunConfig& cfg, std::string& seed, std::string& mode,
                std::string& format, std::size_t& k) {
  cmd->add_option("--k", k, "rank deficiency k (target rank n-k)")->check(CLI::PositiveNumber);
  cmd->add_option("--tm", cfg.t_m, "basis draws per k=1 test")->capture_default_str();
  cmd->add_option("--tbar", cfg.t_bar, "row-subset draws per necessary test")->capture_default_str();
  cmd->add_option("--that", cfg.t_hat, "basis draws per sufficient test")->capture_default_str();
  cmd->add_option("--prime", cfg.prime, "field characteristic for the oracle")->capture_default_str();
  cmd->add_option("--trials", cfg.trials, "oracle realizations")->capture_default_str();
  cmd->add_option("--seed", seed, "integer seed, or 'random'")->capture_default_str();
  cmd->add_option("--mode", mode, "exhaustive | randomized")
      ->check(CLI::IsMember({"exhaustive", "randomized"}))
      ->capture_default_str();
  cmd->add_option("--format", format, "text | json | csv")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  cmd->add_flag("--transpose", cfg.transpose, "transpose the pattern before use");
  cmd->add_option("--budget", cfg.budget, "oracle candidate cap; inner exhaustive cap")
      ->capture_default_str();
  cmd->add_flag("--timing", cfg.timing, "record wall-clock timings (breaks byte-identical output)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generic low-rank matrix completion feasibility engine"};
  app.require_subcommand(1);
  glrmc::RunConfig cfg;
  std::string seed = std::to_string(glrmc::kDefaultSeed);
  std::string mode = "randomized";
  std::string format = "text";
  std::size_t k = 0;
  std::size_t rank = 0;
  std::string verify;
  std::string densities;

  auto* check = app.add_subcommand("check", "decide rank <= n-k completability");
  auto* bounds = app.add_subcommand("bounds", "bracket the generic minimum completion rank");
  auto* oracle = app.add_subcommand("oracle", "finite-field completion search");
  auto* experiment = app.add_subcommand("experiment", "random-pattern density sweep (CSV)");
  for (auto* cmd : {check, bounds, oracle, experiment}) add_common(cmd, cfg, seed, mode, format, k);
  for (auto* cmd : {check, bounds, oracle}) cmd->add_option("pattern", cfg.patterns, "pattern file");
  check->add_option("--verify-witness", verify, "re-verify the witnesses in a saved JSON report");
  oracle->add_option("--rank", rank, "target rank r (k = n - r)");
  experiment->add_option("--n", cfg.n, "rows")->capture_default_str();
  experiment->add_option("--m", cfg.m, "columns")->capture_default_str();
  experiment->add_option("--densities", densities, "comma-separated star densities");
  experiment->add_option("--patterns", cfg.patterns_per_cell, "patterns per density")->capture_default_str();
  experiment->add_option("--zero-fraction", cfg.zero_fraction, "share of non-star cells set to 0")
      ->capture_default_str();
  experiment->add_option("--threads", cfg.threads, "worker threads (0 = hardware)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return glrmc::kExitError;
  }

  try {
    for (auto* cmd : {check, bounds, oracle, experiment})
      if (cmd->parsed()) cfg.command = cmd->get_name();
    cfg.seed = parse_seed(seed);
    cfg.mode = mode == "exhaustive" ? glrmc::SamplerMode::Exhaustive : glrmc::SamplerMode::Randomized;
    cfg.format = format == "json" ? glrmc::OutputFormat::Json
                 : format == "csv" ? glrmc::OutputFormat::Csv
                                   : glrmc::OutputFormat::Text;
    if (cfg.command == "experiment" && format == "text" && experiment->count("--format") == 0)
      cfg.format = glrmc::OutputFormat::Csv;
    if (k) cfg.k = k;
    if (oracle->count("--rank")) cfg.rank = rank;
    if (!verify.empty()) cfg.verify_witness = verify;
    if (!densities.empty()) {
      cfg.densities.clear();
      std::size_t start = 0;
      while (start <= densities.size()) {
        const auto comma = densities.find(',', start);
        const auto piece = densities.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        cfg.densities.push_back(std::stod(piece));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    }
    const auto report = glrmc::run_command(cfg);
    std::cout << report.render(cfg.format);
    return report.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return glrmc::kExitError;
}
