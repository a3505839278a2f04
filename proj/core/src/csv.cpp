#include "sgbeam/csv.hpp"

#include "sgbeam/errors.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sgbeam {

namespace {

double parse_field(std::string_view s, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("csv line " + std::to_string(line) + ": bad number '" +
                                std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = line.find(',');
    out.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) {
      return out;
    }
    line.remove_prefix(comma + 1);
  }
}

} // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvTable trajectory_table(const Trajectory& tr) {
  const std::size_t n = tr.size();
  const std::vector<const std::vector<double>*> cols{
      &tr.times,  &tr.v_tip,   &tr.alpha_tip,  &tr.alpha_dot_tip,  &tr.voltage,
      &tr.energy, &tr.kinetic, &tr.potential, &tr.decay_residual};
  for (const auto* c : cols) {
    if (c->size() != n) {
      throw std::invalid_argument("trajectory columns have inconsistent lengths");
    }
  }
  CsvTable table{trajectory_columns(), {}};
  table.rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row;
    row.reserve(cols.size());
    for (const auto* c : cols) {
      row.push_back((*c)[i]);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

CsvTable spectrum_table(const ModalResult& modal, const GlobalSystem& system, double omega1_si) {
  const auto count = modal.omega.size();
  if (modal.modes.cols() != count || modal.modes.rows() != system.size()) {
    throw std::invalid_argument("spectrum: mode matrix does not match the system");
  }
  CsvTable table;
  table.header = {"index", "omega", "omega_si"};
  for (int i = 0; i < system.size(); ++i) {
    static const char* names[kNodeDofs] = {"v_", "vx_", "a_", "ax_"};
    const int g = system.active_dofs[static_cast<std::size_t>(i)];
    table.header.push_back(names[g % kNodeDofs] + std::to_string(g / kNodeDofs));
  }
  for (Eigen::Index k = 0; k < count; ++k) {
    std::vector<double> row{static_cast<double>(k + 1), modal.omega(k), modal.omega(k) * omega1_si};
    for (Eigen::Index i = 0; i < modal.modes.rows(); ++i) {
      row.push_back(modal.modes(i, k));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string to_csv_text(const CsvTable& table) {
  std::string out;
  for (std::size_t j = 0; j < table.header.size(); ++j) {
    out += (j ? "," : "") + table.header[j];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) {
      throw std::invalid_argument("csv row width does not match the header");
    }
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) {
        out += ',';
      }
      out += format_number(row[j]);
    }
    out += '\n';
  }
  return out;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line_no == 1) {
      for (auto f : split(line)) {
        table.header.emplace_back(f);
      }
      continue;
    }
    if (line.empty()) {
      continue;
    }
    const auto fields = split(line);
    if (fields.size() != table.header.size()) {
      throw std::invalid_argument("csv line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(table.header.size()) + " fields");
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (auto f : fields) {
      row.push_back(parse_field(f, line_no));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError(path.string(), "cannot open for writing");
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) {
    throw IoError(path.string(), "write failed");
  }
}

void write_csv(const CsvTable& table, const std::filesystem::path& path) {
  write_text_file(path, to_csv_text(table));
}

void write_csv(const Trajectory& tr, const std::filesystem::path& path) {
  write_csv(trajectory_table(tr), path);
}

void write_csv(const ModalResult& modal, const GlobalSystem& system, double omega1_si,
               const std::filesystem::path& path) {
  write_csv(spectrum_table(modal, system, omega1_si), path);
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError(path.string(), "cannot open for reading");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_csv(buf.str());
  } catch (const std::invalid_argument& e) {
    throw IoError(path.string(), e.what());
  }
}

} // namespace sgbeam
