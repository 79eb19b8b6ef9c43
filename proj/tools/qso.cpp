// Command-line front end: analyze, simulate and verify quantum state observers.

#include <iostream>

#include "CLI11.hpp"
#include "qso/commands.hpp"
#include "qso/config.hpp"

int main(int argc, char** argv) {
  using namespace qso;

  CLI::App app{"Quantum state observer: observability analysis, simulation and property checks"};
  app.require_subcommand(1);

  std::string target;
  auto* analyze = app.add_subcommand("analyze", "Observability, error spectrum and transient bound");
  analyze->add_option("config", target, "JSON config file or built-in name (two-dim, laser-atom)")
      ->required();

  cli::SimulateOptions sim_opts;
  std::string sim_target;
  auto* simulate = app.add_subcommand("simulate", "Run the observer and write the trajectory CSV");
  simulate->add_option("config", sim_target, "JSON config file or built-in name")->required();
  simulate->add_option("--out", sim_opts.out_path, "CSV output path (default: stdout)");
  simulate->add_option("--dt", sim_opts.dt, "integration step")->check(CLI::PositiveNumber);
  simulate->add_option("--t-final", sim_opts.t_final, "simulation horizon")->check(CLI::PositiveNumber);

  std::optional<std::uint64_t> seed;
  auto* verify = app.add_subcommand("verify", "Run the randomized property suites");
  verify->add_option("--seed", seed, "RNG seed (default: $QSO_SEED or a fixed value)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : cli::kConfigError;
  }

  try {
    if (*analyze) return cli::cmd_analyze(resolve_config(target), std::cout);
    if (*simulate) return cli::cmd_simulate(resolve_config(sim_target), sim_opts, std::cout, std::cerr);
    if (*verify) return cli::cmd_verify(cli::resolve_seed(seed), std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return cli::kConfigError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
