#pragma once

#include "sgbeam/config.hpp"

#include <filesystem>
#include <limits>
#include <string>
#include <vector>

namespace sgbeam {

/// One closed- or open-loop run reduced to scalars.
struct RunMetrics {
  double gain = 0.0;
  double energy_initial = 0.0;
  double energy_final = 0.0;
  double decay_ratio = 0.0;        ///< E(t_end)/E(0); 0 when E(0) = 0
  double max_voltage = 0.0;        ///< max |u|, dimensionless
  double max_voltage_si = 0.0;     ///< volts
  double max_decay_residual = 0.0; ///< normalized, see verify_decay_identity
  double max_energy_increase = 0.0;  ///< largest E(t_k+1) - E(t_k), relative to E(0)
  double max_energy_discrepancy = std::numeric_limits<double>::quiet_NaN();
  std::size_t samples = 0;
  std::string file;
};

struct RunSummary {
  RunMode mode = RunMode::simulate;
  std::vector<double> omega;   ///< dimensionless, omega1 = 1
  double omega1_si = 0.0;      ///< first natural frequency, rad/s
  double gain_si = 0.0;        ///< SI gain of the configured k_u, V s/rad
  RunMetrics metrics;          ///< simulate mode
  std::vector<RunMetrics> sweep;
  bool sweep_nonincreasing = true;
  std::vector<std::string> files;  ///< written files, relative to the output dir
  double wall_clock_seconds = 0.0;
};

/// Builds the model, runs the configured mode and writes its files into
/// `out_dir` (created if needed). On failure every file written so far is
/// removed and the error propagates.
RunSummary run(const RunConfig& config, const std::filesystem::path& out_dir);

/// Human-readable summary text (no timing, so it is reproducible).
std::string format_summary(const RunSummary& summary, const RunConfig& config);

} // namespace sgbeam
