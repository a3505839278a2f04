#pragma once

#include "sgbeam/control_diag.hpp"
#include "sgbeam/dynamics.hpp"
#include "sgbeam/model.hpp"

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace sgbeam {

enum class RunMode { simulate, modal, sweep };

std::string_view to_string(RunMode mode);
RunMode parse_run_mode(std::string_view text);

/// Everything a run needs. Material and geometry are SI; integrator times are
/// dimensionless (units of 1/omega1).
struct RunConfig {
  ModelInputs model = default_inputs();
  ControllerConfig controller{};
  IntegratorConfig integrator{};
  InitialCondition initial{};
  int modal_count = 5;
  std::vector<double> sweep_gains{0.0, 0.1, 0.3, 0.6};
  std::string output_dir;
  RunMode mode = RunMode::simulate;
  bool debug_energy = false;

  /// Keys that were set explicitly; every other key carries its default.
  std::set<std::string> explicit_keys;

  bool operator==(const RunConfig& other) const;
};

/// Parses the line-oriented `section.key = value` format. '#' starts a
/// comment. Unknown or repeated keys are rejected; the result is validated.
RunConfig parse_config(std::string_view text);

/// Inverse of parse_config: every key, values at 17 significant digits.
std::string to_text(const RunConfig& config);

/// Re-checks every cross-field constraint. Throws ConfigError with a key path.
void validate(const RunConfig& config);

/// All accepted keys, in canonical order.
const std::vector<std::string>& config_keys();

/// Current value of `key` rendered as config text.
std::string config_value(const RunConfig& config, const std::string& key);

} // namespace sgbeam
