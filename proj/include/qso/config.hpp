#pragma once

#include <optional>
#include <string>
#include <variant>

#include "qso/errors.hpp"
#include "qso/matkit.hpp"
#include "qso/model.hpp"
#include "qso/sim.hpp"

namespace qso {

/// Malformed or inconsistent experiment description. The message names the
/// offending JSON field (as a JSON pointer) or the line/column of a syntax error.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Use K = C^dagger.
struct AdjointGain {};

/// One experiment: system, observer gain, initial states and integration settings.
struct ExperimentConfig {
  std::string name;
  QuantumSystem system;
  std::variant<AdjointGain, ComplexMatrix> gain;
  DensityOperator rho0;
  DensityOperator rho_hat0;
  SimConfig sim;
  std::optional<std::string> csv_path;
};

/// Parse a JSON experiment description. `source` is used in error messages.
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

/// Names accepted by `builtin_config`.
bool is_builtin(const std::string& name);
/// "two-dim" or "laser-atom". Throws ConfigError for any other name.
ExperimentConfig builtin_config(const std::string& name);

/// Built-in name if recognised, otherwise a path to a JSON file.
ExperimentConfig resolve_config(const std::string& name_or_path);

/// JSON text of a built-in experiment, in the same schema `parse_config` reads.
std::string builtin_json(const std::string& name);

}  // namespace qso
