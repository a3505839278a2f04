#include "sgbeam/run.hpp"

#include "sgbeam/csv.hpp"
#include "sgbeam/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>
#include <system_error>

namespace sgbeam {

namespace {

namespace fs = std::filesystem;

RunMetrics measure(const Trajectory& tr, double gain, double H, const NondimScales& scales) {
  RunMetrics m;
  m.gain = gain;
  m.samples = tr.size();
  m.max_energy_discrepancy = tr.max_energy_discrepancy;
  if (tr.size() == 0) {
    return m;
  }
  m.energy_initial = tr.energy.front();
  m.energy_final = tr.energy.back();
  m.decay_ratio = m.energy_initial > 0.0 ? m.energy_final / m.energy_initial : 0.0;
  for (double u : tr.voltage) {
    m.max_voltage = std::max(m.max_voltage, std::abs(u));
  }
  m.max_voltage_si = std::abs(from_nondim_voltage(m.max_voltage, scales));
  for (std::size_t i = 1; i < tr.size(); ++i) {
    m.max_energy_increase = std::max(m.max_energy_increase, tr.energy[i] - tr.energy[i - 1]);
  }
  if (m.energy_initial > 0.0) {
    m.max_energy_increase /= m.energy_initial;
  }
  if (tr.size() >= 3) {
    m.max_decay_residual =
        verify_decay_identity(tr, LumpedCoefficients{.H = H}, ControllerConfig{gain, true}).max_residual;
  }
  return m;
}

Trajectory run_one(const BeamModel& model, const RunConfig& config, const State& ic, double gain) {
  SimulationOptions options;
  options.store_states = false;
  if (config.debug_energy) {
    options.energy_check =
        EnergyCrossCheck{model.nondim.coefficients, model.mesh, config.model.quadrature_order};
  }
  return simulate(model.system, gain, ic, config.integrator, options);
}

void line(std::ostringstream& out, const std::string& key, const std::string& value) {
  out << key << " = " << value << '\n';
}

std::string num(double v) { return format_number(v); }

void remove_quietly(const fs::path& p) {
  std::error_code ec;
  fs::remove(p, ec);
}

} // namespace

RunSummary run(const RunConfig& config, const fs::path& out_dir) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) {
    throw IoError(out_dir.string(), "cannot create output directory" +
                                        (ec ? ": " + ec.message() : std::string()));
  }

  RunSummary summary;
  summary.mode = config.mode;
  std::vector<fs::path> written;
  auto target = [&](const std::string& name) {
    written.push_back(out_dir / name);
    summary.files.push_back(name);
    return written.back();
  };

  try {
    const BeamModel model = build_model(config.model);
    const double H = model.nondim.coefficients.H;
    summary.gain_si = gain_to_si(config.controller.effective_gain(), model.scales);

    const ModalResult modal = eigenfrequencies(model.system, config.modal_count);
    summary.omega.assign(modal.omega.data(), modal.omega.data() + modal.omega.size());
    summary.omega1_si = model.omega_to_si(summary.omega.front());
    write_csv(modal, model.system, model.scales.omega1, target("modal.csv"));

    if (config.mode == RunMode::simulate) {
      const State ic = make_initial_condition(config.initial, model.system);
      const double gain = config.controller.effective_gain();
      const Trajectory tr = run_one(model, config, ic, gain);
      write_csv(tr, target("trajectory.csv"));
      summary.metrics = measure(tr, gain, H, model.scales);
      summary.metrics.file = "trajectory.csv";
    } else if (config.mode == RunMode::sweep) {
      const State ic = make_initial_condition(config.initial, model.system);
      std::vector<fs::path> paths;
      for (std::size_t i = 0; i < config.sweep_gains.size(); ++i) {
        paths.push_back(target("trajectory_k" + std::to_string(i) + ".csv"));
      }
      // One job per gain; each owns its output file.
      std::vector<std::future<RunMetrics>> jobs;
      for (std::size_t i = 0; i < config.sweep_gains.size(); ++i) {
        jobs.push_back(std::async(std::launch::async, [&, i] {
          const double gain = config.sweep_gains[i];
          const Trajectory tr = run_one(model, config, ic, gain);
          write_csv(tr, paths[i]);
          RunMetrics m = measure(tr, gain, H, model.scales);
          m.file = paths[i].filename().string();
          return m;
        }));
      }
      std::exception_ptr first_error;
      for (auto& job : jobs) {
        try {
          summary.sweep.push_back(job.get());
        } catch (...) {
          if (!first_error) {
            first_error = std::current_exception();
          }
        }
      }
      if (first_error) {
        std::rethrow_exception(first_error);
      }

      std::vector<std::size_t> order(summary.sweep.size());
      for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
      }
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return summary.sweep[a].gain < summary.sweep[b].gain;
      });
      for (std::size_t k = 1; k < order.size(); ++k) {
        const RunMetrics& lo = summary.sweep[order[k - 1]];
        const RunMetrics& hi = summary.sweep[order[k]];
        if (hi.energy_final > lo.energy_final) {
          summary.sweep_nonincreasing = false;
        }
      }

      CsvTable table;
      table.header = {"index", "k_u", "k_u_si", "E0", "E_end", "decay_ratio", "max_u",
                      "max_decay_residual"};
      for (std::size_t i = 0; i < summary.sweep.size(); ++i) {
        const RunMetrics& m = summary.sweep[i];
        table.rows.push_back({static_cast<double>(i), m.gain, gain_to_si(m.gain, model.scales),
                              m.energy_initial, m.energy_final, m.decay_ratio, m.max_voltage,
                              m.max_decay_residual});
      }
      write_csv(table, target("sweep_summary.csv"));
    }

    summary.files.push_back("summary.txt");
    written.push_back(out_dir / "summary.txt");
    write_text_file(written.back(), format_summary(summary, config));
  } catch (...) {
    for (const auto& p : written) {
      remove_quietly(p);
    }
    throw;
  }

  summary.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return summary;
}

std::string format_summary(const RunSummary& s, const RunConfig& config) {
  std::ostringstream out;
  out << "# sgtbeam run summary\n";
  line(out, "mode", std::string(to_string(s.mode)));

  out << "\n[frequencies]\n";
  line(out, "f1_si_hz", num(s.omega1_si / (2.0 * std::numbers::pi)));
  for (std::size_t i = 0; i < s.omega.size(); ++i) {
    line(out, "omega" + std::to_string(i + 1), num(s.omega[i]));
  }
  for (std::size_t i = 0; i < s.omega.size(); ++i) {
    line(out, "omega" + std::to_string(i + 1) + "_si_rad_per_s", num(s.omega[i] / s.omega.front() * s.omega1_si));
  }

  auto metrics = [&](const RunMetrics& m) {
    line(out, "k_u", num(m.gain));
    line(out, "trajectory", m.file);
    line(out, "samples", std::to_string(m.samples));
    line(out, "E0", num(m.energy_initial));
    line(out, "E_end", num(m.energy_final));
    line(out, "decay_ratio", num(m.decay_ratio));
    line(out, "max_abs_u", num(m.max_voltage));
    line(out, "max_abs_u_si_volt", num(m.max_voltage_si));
    line(out, "max_decay_residual", num(m.max_decay_residual));
    line(out, "max_energy_increase_rel", num(m.max_energy_increase));
    if (!std::isnan(m.max_energy_discrepancy)) {
      line(out, "max_energy_discrepancy_rel", num(m.max_energy_discrepancy));
    }
  };

  if (s.mode == RunMode::simulate) {
    out << "\n[simulation]\n";
    line(out, "k_u_si_volt_s_per_rad", num(s.gain_si));
    line(out, "t_end_si_s", num(config.integrator.t_end / s.omega1_si));
    metrics(s.metrics);
  } else if (s.mode == RunMode::sweep) {
    out << "\n[sweep]\n";
    line(out, "E_end_nonincreasing_in_k_u", s.sweep_nonincreasing ? "true" : "false");
    for (std::size_t i = 0; i < s.sweep.size(); ++i) {
      out << "\n[sweep." << i << "]\n";
      metrics(s.sweep[i]);
    }
  }

  out << "\n[files]\n";
  for (const auto& f : s.files) {
    out << f << '\n';
  }

  out << "\n[config]\n# source: 'set' = config file or command line, 'default' = built-in profile\n";
  for (const auto& key : config_keys()) {
    const std::string value = config_value(config, key);
    out << key << " = " << value
        << (config.explicit_keys.count(key) ? "  # set" : "  # default") << '\n';
  }
  return out.str();
}

} // namespace sgbeam
