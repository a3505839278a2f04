#include "sgbeam/config.hpp"
#include "sgbeam/errors.hpp"
#include "sgbeam/run.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

// Exit codes, one per failure category.
enum Exit : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kConfig = 3,
  kNumerical = 4,
  kIo = 5,
  kInvalid = 6,
};

int fail(int code, const char* category, const std::string& message) {
  std::string flat = message;
  for (char& c : flat) {
    if (c == '\n' || c == '\r') {
      c = ' ';
    }
  }
  std::fprintf(stderr, "error:%s: %s\n", category, flat.c_str());
  return code;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw sgbeam::IoError(path, "cannot open config file");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strain-gradient Timoshenko cantilever with tip-rate piezo feedback"};
  std::string config_path;
  std::string mode;
  std::string out_dir;
  bool debug_energy = false;
  long long seed = 0;
  app.add_option("--config", config_path, "config file (section.key = value lines)");
  app.add_option("--mode", mode, "run mode")->check(CLI::IsMember({"simulate", "modal", "sweep"}));
  app.add_option("--out", out_dir, "output directory (fallback: output.dir, $SGTBEAM_OUT, ./sgtbeam_out)");
  app.add_flag("--debug-energy", debug_energy, "cross-check matrix energy against quadrature every sample");
  app.add_option("--seed", seed, "reserved; the solver uses no randomness");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(kUsage, "usage", e.what());
  }

  try {
    sgbeam::RunConfig config =
        config_path.empty() ? sgbeam::parse_config("") : sgbeam::parse_config(read_file(config_path));
    if (!mode.empty()) {
      config.mode = sgbeam::parse_run_mode(mode);
      config.explicit_keys.insert("run.mode");
    }
    if (debug_energy) {
      config.debug_energy = true;
      config.explicit_keys.insert("run.debug_energy");
    }
    if (!out_dir.empty()) {
      config.output_dir = out_dir;
      config.explicit_keys.insert("output.dir");
    } else if (config.output_dir.empty()) {
      const char* env = std::getenv("SGTBEAM_OUT");
      config.output_dir = (env && *env) ? env : "sgtbeam_out";
    }

    const sgbeam::RunSummary summary = sgbeam::run(config, config.output_dir);

    std::printf("mode %s, omega1 = %.6g rad/s\n", std::string(sgbeam::to_string(summary.mode)).c_str(),
                summary.omega1_si);
    if (summary.mode == sgbeam::RunMode::simulate) {
      std::printf("k_u = %g, E(t_end)/E(0) = %.6g, max decay residual = %.3g\n",
                  summary.metrics.gain, summary.metrics.decay_ratio,
                  summary.metrics.max_decay_residual);
    }
    for (const auto& m : summary.sweep) {
      std::printf("k_u = %g, E(t_end)/E(0) = %.6g\n", m.gain, m.decay_ratio);
    }
    std::printf("wrote %zu files to %s in %.3f s\n", summary.files.size(), config.output_dir.c_str(),
                summary.wall_clock_seconds);
    return kOk;
  } catch (const sgbeam::ConfigError& e) {
    return fail(kConfig, "config", e.what());
  } catch (const sgbeam::NumericalError& e) {
    return fail(kNumerical, "numerical", e.what());
  } catch (const sgbeam::IoError& e) {
    return fail(kIo, "io", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(kInvalid, "invalid", e.what());
  } catch (const std::exception& e) {
    return fail(kInternal, "internal", e.what());
  }
}
