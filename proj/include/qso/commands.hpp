#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "qso/config.hpp"
#include "qso/sim.hpp"
#include "qso/verify.hpp"

namespace qso::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kNotObservable = 3,
  kUnstableDesign = 4,
  kVerificationFailed = 5,
};

inline constexpr std::uint64_t kDefaultSeed = 20230105;

/// Observability, Luenberger design and transient constant for one experiment.
int cmd_analyze(const ExperimentConfig& cfg, std::ostream& out);

struct SimulateOptions {
  std::optional<std::string> out_path;  // overrides the config's output.csv
  std::optional<double> dt;
  std::optional<double> t_final;
};

/// Run the observer, write the trajectory CSV and print a summary.
/// The CSV goes to the resolved path, or to `out` when none is set; the summary
/// then moves to `err` so stdout stays machine-readable.
int cmd_simulate(const ExperimentConfig& cfg, const SimulateOptions& opts, std::ostream& out,
                 std::ostream& err);

/// Run every property suite; non-zero exit on any failure.
int cmd_verify(std::uint64_t seed, std::ostream& out,
               const verify::ProjectionFn& project = verify::library_projection);

/// Column order: t, err_norm, s_true, s_hat, s_rel, env_err, env_entropy, env_rel,
/// envelopes_applicable. Infinite s_rel prints as "inf"; a missing relative
/// envelope prints as "N/A".
void write_csv(const Trajectory& traj, std::ostream& out);

/// Seed from an explicit flag, else $QSO_SEED, else kDefaultSeed.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag);

}  // namespace qso::cli
