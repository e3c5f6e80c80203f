// timqd: ground-state correlations, decoherence sweeps and critical
// signatures of the transverse Ising chain.
//
// Options may also come from a key=value file (--config); flags given on
// the command line take precedence.

#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "timqd/cli.hpp"
#include "timqd/errors.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

}  // namespace

int main(int argc, char** argv) {
  using timqd::cli::OutputFormat;
  using timqd::cli::RunConfig;

  CLI::App app{"Quantum and classical correlations of the transverse Ising chain under decoherence"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_config("--config", "", "key=value configuration file");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string out_path;
  std::string format = "csv";

  app.add_option("--lambda", cfg.lambda, "Coupling lambda in [0, 1]")->capture_default_str();
  app.add_option("--channel", cfg.channel,
                 "amplitude-damping|phase-flip|bit-flip|bit-phase-flip (phase-damping = phase-flip)")
      ->capture_default_str();
  app.add_option("--r", cfg.pair_distance, "Distance between the two spins")->capture_default_str();
  app.add_option("--quad-tol", cfg.quad_tol, "Quadrature absolute tolerance")->capture_default_str();
  app.add_option("--root-tol", cfg.root_tol, "Root bracket width")->capture_default_str();
  app.add_option("--p-start", cfg.p_start, "First p of the sweep")->capture_default_str();
  app.add_option("--p-stop", cfg.p_stop, "Last p of the sweep")->capture_default_str();
  app.add_option("--p-count", cfg.p_count, "Number of p points")->capture_default_str();
  app.add_option("--lambda-grid", cfg.lambda_grid, "'a,b,c' or 'start:stop:count'")
      ->capture_default_str();
  app.add_option("--h", cfg.derivative_step, "Central-difference step in lambda")
      ->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker threads for lambda sweeps")
      ->capture_default_str();
  app.add_option("--format", format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", out_path, "Output file (default: stdout)");
  app.add_option("--random", cfg.random_states, "discord-check: number of random states")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "discord-check: RNG seed")->capture_default_str();
  app.add_option("--oracle-grid", cfg.oracle_grid, "discord-check: angular grid size")
      ->capture_default_str();
  app.add_option("--oracle-tol", cfg.oracle_tol, "discord-check: allowed |Q - Q_oracle|")
      ->capture_default_str();

  auto* ground = app.add_subcommand("ground-state", "Two-site reduced state and correlators");
  auto* sweep = app.add_subcommand("sweep-p", "I, C, Q along a p grid for one channel");
  auto* critical = app.add_subcommand("critical", "p_sc, p_cr1, p_cr2 and lambda-derivatives");
  auto* check = app.add_subcommand("discord-check", "Closed-form discord vs measurement oracle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  cfg.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
  if (!out_path.empty()) cfg.output_path = out_path;

  try {
    std::ofstream file;
    if (cfg.output_path) {
      file.open(*cfg.output_path, std::ios::binary);
      if (!file) {
        std::cerr << "error: cannot open " << *cfg.output_path << " for writing\n";
        return kExitFailure;
      }
    }
    std::ostream& out = cfg.output_path ? static_cast<std::ostream&>(file) : std::cout;

    bool ok = true;
    if (ground->parsed()) {
      timqd::cli::cmd_ground_state(cfg, out);
    } else if (sweep->parsed()) {
      timqd::cli::cmd_sweep_p(cfg, out);
    } else if (critical->parsed()) {
      timqd::cli::cmd_critical(cfg, out);
    } else if (check->parsed()) {
      ok = timqd::cli::cmd_discord_check(cfg, out);
      if (!ok) std::cerr << "error: closed-form discord disagrees with the oracle\n";
    }
    out.flush();
    if (!out) {
      std::cerr << "error: write failed\n";
      return kExitFailure;
    }
    return ok ? 0 : kExitFailure;
  } catch (const timqd::cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
