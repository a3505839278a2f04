#include "sgbeam/config.hpp"

#include "sgbeam/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace sgbeam {

namespace {

constexpr int kMaxElements = 2048;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw std::invalid_argument("expected a finite number, got '" + std::string(text) + "'");
  }
  return v;
}

int parse_int(std::string_view text) {
  text = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

bool parse_bool(std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes" || text == "on") {
    return true;
  }
  if (text == "false" || text == "0" || text == "no" || text == "off") {
    return false;
  }
  throw std::invalid_argument("expected true or false, got '" + std::string(text) + "'");
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    out.push_back(parse_double(text.substr(0, comma)));
    if (comma == std::string_view::npos) {
      break;
    }
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) {
    throw std::invalid_argument("expected a comma-separated list of numbers");
  }
  return out;
}

std::string_view to_string(InitialCondition::Kind kind) {
  switch (kind) {
    case InitialCondition::Kind::zero:
      return "zero";
    case InitialCondition::Kind::static_tip_load:
      return "static_tip_load";
    case InitialCondition::Kind::eigenmode:
      return "eigenmode";
  }
  return "?";
}

InitialCondition::Kind parse_kind(std::string_view text) {
  text = trim(text);
  if (text == "zero") {
    return InitialCondition::Kind::zero;
  }
  if (text == "static_tip_load") {
    return InitialCondition::Kind::static_tip_load;
  }
  if (text == "eigenmode") {
    return InitialCondition::Kind::eigenmode;
  }
  throw std::invalid_argument("unknown initial condition kind '" + std::string(text) +
                              "' (zero, static_tip_load, eigenmode)");
}

struct Key {
  std::string name;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, std::string_view)> set;
};

template <class Access>
Key real_key(std::string name, Access access) {
  return {std::move(name),
          [access](const RunConfig& c) { return format_double(access(const_cast<RunConfig&>(c))); },
          [access](RunConfig& c, std::string_view v) { access(c) = parse_double(v); }};
}

template <class Access>
Key int_key(std::string name, Access access) {
  return {std::move(name),
          [access](const RunConfig& c) {
            return std::to_string(access(const_cast<RunConfig&>(c)));
          },
          [access](RunConfig& c, std::string_view v) { access(c) = parse_int(v); }};
}

template <class Access>
Key bool_key(std::string name, Access access) {
  return {std::move(name),
          [access](const RunConfig& c) {
            return std::string(access(const_cast<RunConfig&>(c)) ? "true" : "false");
          },
          [access](RunConfig& c, std::string_view v) { access(c) = parse_bool(v); }};
}

void add_layer_keys(std::vector<Key>& keys, const std::string& section,
                    MaterialLayer ModelInputs::*layer) {
  auto field = [&](const char* name, double MaterialLayer::*member) {
    keys.push_back(real_key(section + "." + name, [layer, member](RunConfig& c) -> double& {
      return (c.model.*layer).*member;
    }));
  };
  field("young_modulus", &MaterialLayer::young_modulus);
  field("poisson_ratio", &MaterialLayer::poisson_ratio);
  field("density", &MaterialLayer::density);
  field("thickness", &MaterialLayer::thickness);
  field("width", &MaterialLayer::width);
  field("e13", &MaterialLayer::e13);
  field("permittivity_33", &MaterialLayer::permittivity_33);
}

std::vector<Key> build_keys() {
  std::vector<Key> keys;
  add_layer_keys(keys, "beam", &ModelInputs::beam);
  add_layer_keys(keys, "piezo", &ModelInputs::piezo);

  keys.push_back(real_key("scales.l0", [](RunConfig& c) -> double& { return c.model.scales.l0; }));
  keys.push_back(real_key("scales.l1", [](RunConfig& c) -> double& { return c.model.scales.l1; }));
  keys.push_back(real_key("scales.l2", [](RunConfig& c) -> double& { return c.model.scales.l2; }));

  keys.push_back(real_key("geometry.length", [](RunConfig& c) -> double& { return c.model.length; }));
  keys.push_back({"geometry.moment_arm",
                  [](const RunConfig& c) {
                    return c.model.moment_arm ? format_double(*c.model.moment_arm)
                                              : std::string("auto");
                  },
                  [](RunConfig& c, std::string_view v) {
                    if (trim(v) == "auto") {
                      c.model.moment_arm.reset();
                    } else {
                      c.model.moment_arm = parse_double(v);
                    }
                  }});

  keys.push_back(int_key("mesh.n_elements", [](RunConfig& c) -> int& { return c.model.n_elements; }));
  keys.push_back(int_key("mesh.quadrature_order",
                         [](RunConfig& c) -> int& { return c.model.quadrature_order; }));

  keys.push_back(real_key("controller.k_u", [](RunConfig& c) -> double& { return c.controller.gain; }));
  keys.push_back(bool_key("controller.enabled",
                          [](RunConfig& c) -> bool& { return c.controller.enabled; }));

  keys.push_back(real_key("integrator.dt", [](RunConfig& c) -> double& { return c.integrator.dt; }));
  keys.push_back(real_key("integrator.t_end", [](RunConfig& c) -> double& { return c.integrator.t_end; }));
  keys.push_back(real_key("integrator.beta", [](RunConfig& c) -> double& { return c.integrator.beta; }));
  keys.push_back(real_key("integrator.gamma", [](RunConfig& c) -> double& { return c.integrator.gamma; }));
  keys.push_back(int_key("integrator.stride", [](RunConfig& c) -> int& { return c.integrator.stride; }));

  keys.push_back({"initial.kind",
                  [](const RunConfig& c) { return std::string(to_string(c.initial.kind)); },
                  [](RunConfig& c, std::string_view v) { c.initial.kind = parse_kind(v); }});
  keys.push_back(real_key("initial.amplitude", [](RunConfig& c) -> double& { return c.initial.amplitude; }));
  keys.push_back(int_key("initial.mode_index", [](RunConfig& c) -> int& { return c.initial.mode_index; }));

  keys.push_back(int_key("modal.count", [](RunConfig& c) -> int& { return c.modal_count; }));

  keys.push_back({"sweep.gains",
                  [](const RunConfig& c) {
                    std::string out;
                    for (std::size_t i = 0; i < c.sweep_gains.size(); ++i) {
                      out += (i ? ", " : "") + format_double(c.sweep_gains[i]);
                    }
                    return out;
                  },
                  [](RunConfig& c, std::string_view v) { c.sweep_gains = parse_list(v); }});

  keys.push_back({"output.dir", [](const RunConfig& c) { return c.output_dir; },
                  [](RunConfig& c, std::string_view v) { c.output_dir = std::string(trim(v)); }});

  keys.push_back({"run.mode", [](const RunConfig& c) { return std::string(to_string(c.mode)); },
                  [](RunConfig& c, std::string_view v) { c.mode = parse_run_mode(trim(v)); }});
  keys.push_back(bool_key("run.debug_energy", [](RunConfig& c) -> bool& { return c.debug_energy; }));
  return keys;
}

const std::vector<Key>& key_table() {
  static const std::vector<Key> keys = build_keys();
  return keys;
}

const Key* find_key(std::string_view name) {
  for (const Key& k : key_table()) {
    if (k.name == name) {
      return &k;
    }
  }
  return nullptr;
}

// Line of an explicitly set key, 0 when defaulted; used to point errors at the source.
using LineMap = std::map<std::string, int>;

void check(bool ok, const LineMap& lines, const std::string& key, const std::string& message) {
  if (!ok) {
    const auto it = lines.find(key);
    throw ConfigError(it == lines.end() ? 0 : it->second, key, message);
  }
}

void validate_with_lines(const RunConfig& c, const LineMap& lines) {
  auto layer = [&](const MaterialLayer& l, const std::string& section) {
    check(l.young_modulus > 0.0, lines, section + ".young_modulus", "must be > 0");
    check(l.poisson_ratio > -1.0 && l.poisson_ratio < 0.5, lines, section + ".poisson_ratio",
          "must lie in (-1, 0.5)");
    check(l.density > 0.0, lines, section + ".density", "must be > 0");
    check(l.thickness > 0.0, lines, section + ".thickness", "must be > 0");
    check(l.width > 0.0, lines, section + ".width", "must be > 0");
    check(l.permittivity_33 >= 0.0, lines, section + ".permittivity_33", "must be >= 0");
  };
  layer(c.model.beam, "beam");
  layer(c.model.piezo, "piezo");
  check(c.model.scales.l0 >= 0.0, lines, "scales.l0", "must be >= 0");
  check(c.model.scales.l1 >= 0.0, lines, "scales.l1", "must be >= 0");
  check(c.model.scales.l2 >= 0.0, lines, "scales.l2", "must be >= 0");
  check(c.model.length > 0.0, lines, "geometry.length", "must be > 0");
  check(!c.model.moment_arm || *c.model.moment_arm > 0.0, lines, "geometry.moment_arm",
        "must be > 0 (or auto)");
  check(c.model.n_elements >= 1 && c.model.n_elements <= kMaxElements, lines, "mesh.n_elements",
        "must lie in [1, " + std::to_string(kMaxElements) + "]");
  check(c.model.quadrature_order >= 1 && c.model.quadrature_order <= 64, lines,
        "mesh.quadrature_order", "must lie in [1, 64]");

  check(c.integrator.dt > 0.0, lines, "integrator.dt", "must be > 0");
  check(c.integrator.t_end >= 0.0, lines, "integrator.t_end", "must be >= 0");
  check(c.integrator.beta >= 0.0 && c.integrator.beta <= 0.5, lines, "integrator.beta",
        "must lie in [0, 1/2]");
  check(c.integrator.gamma >= 0.5, lines, "integrator.gamma", "must be >= 1/2");
  check(c.integrator.stride >= 1, lines, "integrator.stride", "must be >= 1");

  const int dofs = kNodeDofs * c.model.n_elements;
  check(c.initial.mode_index >= 1 && c.initial.mode_index <= dofs, lines, "initial.mode_index",
        "must lie in [1, " + std::to_string(dofs) + "]");
  check(c.modal_count >= 1 && c.modal_count <= dofs, lines, "modal.count",
        "must lie in [1, " + std::to_string(dofs) + "]");

  // Sign of the dimensionless coupling: the voltage scale carries e13, so
  // H~ = z b e13 / (e13_ref L^2) is positive whenever the actuator is active.
  const double z = c.model.moment_arm.value_or(default_moment_arm(c.model.beam, c.model.piezo));
  const NondimScales ref = reference_scales(c.model);
  const double H = z * c.model.piezo.e13 * c.model.piezo.width / (ref.e13 * c.model.length * c.model.length);

  try {
    validate(c.controller, H);
  } catch (const std::invalid_argument& e) {
    check(false, lines, "controller.k_u", e.what());
  }
  for (double g : c.sweep_gains) {
    check(g >= 0.0, lines, "sweep.gains", "gains must be >= 0");
    check(g == 0.0 || H * g > 0.0, lines, "sweep.gains",
          "H * k_u must be > 0 for every nonzero gain");
  }
}

} // namespace

std::string_view to_string(RunMode mode) {
  switch (mode) {
    case RunMode::simulate:
      return "simulate";
    case RunMode::modal:
      return "modal";
    case RunMode::sweep:
      return "sweep";
  }
  return "?";
}

RunMode parse_run_mode(std::string_view text) {
  if (text == "simulate") {
    return RunMode::simulate;
  }
  if (text == "modal") {
    return RunMode::modal;
  }
  if (text == "sweep") {
    return RunMode::sweep;
  }
  throw std::invalid_argument("unknown mode '" + std::string(text) + "' (simulate, modal, sweep)");
}

bool RunConfig::operator==(const RunConfig& other) const {
  for (const Key& k : key_table()) {
    if (k.get(*this) != k.get(other)) {
      return false;
    }
  }
  return true;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const Key& k : key_table()) {
      out.push_back(k.name);
    }
    return out;
  }();
  return names;
}

std::string config_value(const RunConfig& config, const std::string& key) {
  const Key* k = find_key(key);
  if (!k) {
    throw std::invalid_argument("unknown config key '" + key + "'");
  }
  return k->get(config);
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  LineMap lines;

  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(line_no, "", "expected 'section.key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const Key* k = find_key(key);
    if (!k) {
      throw ConfigError(line_no, key, "unknown key");
    }
    if (lines.count(key)) {
      throw ConfigError(line_no, key, "repeated key (first set on line " +
                                          std::to_string(lines[key]) + ")");
    }
    if (value.empty() && key != "output.dir") {
      throw ConfigError(line_no, key, "missing value");
    }
    try {
      k->set(cfg, value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(line_no, key, e.what());
    }
    lines[key] = line_no;
    cfg.explicit_keys.insert(key);
  }

  validate_with_lines(cfg, lines);
  return cfg;
}

void validate(const RunConfig& config) { validate_with_lines(config, {}); }

std::string to_text(const RunConfig& config) {
  std::ostringstream out;
  std::string section;
  for (const Key& k : key_table()) {
    const std::string value = k.get(config);
    if (k.name == "output.dir" && value.empty()) {
      continue;
    }
    const std::string this_section = k.name.substr(0, k.name.find('.'));
    if (this_section != section) {
      if (!section.empty()) {
        out << '\n';
      }
      section = this_section;
    }
    out << k.name << " = " << value << '\n';
  }
  return out.str();
}

} // namespace sgbeam
