#pragma once

#include "sgbeam/assembly.hpp"
#include "sgbeam/dynamics.hpp"
#include "sgbeam/state.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace sgbeam {

/// Numeric table with a header row. Every row has header.size() entries.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

inline const std::vector<std::string>& trajectory_columns() {
  static const std::vector<std::string> cols{"t", "v_tip", "alpha_tip", "alpha_dot_tip", "u",
                                             "E", "kinetic", "potential", "decay_residual"};
  return cols;
}

/// 17 significant digits; parses back to the same double.
std::string format_number(double v);

CsvTable trajectory_table(const Trajectory& tr);

/// index, omega, omega_si, then v_i, vx_i, a_i, ax_i for nodes 1..n of the
/// clamped system (node 0 is fixed and omitted).
CsvTable spectrum_table(const ModalResult& modal, const GlobalSystem& system, double omega1_si);

std::string to_csv_text(const CsvTable& table);
CsvTable parse_csv(const std::string& text);

/// Writes comma-separated text with Unix newlines. Throws IoError on failure.
void write_csv(const CsvTable& table, const std::filesystem::path& path);
void write_csv(const Trajectory& tr, const std::filesystem::path& path);
void write_csv(const ModalResult& modal, const GlobalSystem& system, double omega1_si,
               const std::filesystem::path& path);

CsvTable read_csv(const std::filesystem::path& path);

/// Writes `text` to `path` verbatim. Throws IoError on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

} // namespace sgbeam
