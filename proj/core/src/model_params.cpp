#include "sgbeam/model_params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sgbeam {

namespace {

void require(bool ok, const char* path, const char* field, const char* what) {
  if (!ok) {
    throw std::invalid_argument(std::string(path) + "." + field + ": " + what);
  }
}

LayerStiffness scale(const LayerStiffness& k, double s_alpha_xx, double s_grad, double s_shear) {
  return {k.k1 * s_alpha_xx, k.k2 * s_grad, k.k3 * s_grad, k.k4 * s_grad, k.k5 * s_shear};
}

} // namespace

void validate(const MaterialLayer& layer, const char* path) {
  require(std::isfinite(layer.young_modulus) && layer.young_modulus > 0.0, path,
          "young_modulus", "must be > 0");
  require(std::isfinite(layer.poisson_ratio) && layer.poisson_ratio > -1.0 &&
              layer.poisson_ratio < 0.5,
          path, "poisson_ratio", "must lie in (-1, 0.5)");
  require(std::isfinite(layer.density) && layer.density > 0.0, path, "density", "must be > 0");
  require(std::isfinite(layer.thickness) && layer.thickness > 0.0, path, "thickness",
          "must be > 0");
  require(std::isfinite(layer.width) && layer.width > 0.0, path, "width", "must be > 0");
  require(std::isfinite(layer.e13), path, "e13", "must be finite");
  require(std::isfinite(layer.permittivity_33) && layer.permittivity_33 >= 0.0, path,
          "permittivity_33", "must be >= 0");
}

DerivedModuli derive_moduli(const MaterialLayer& layer) {
  const double E = layer.young_modulus;
  const double nu = layer.poisson_ratio;
  if (!(E > 0.0)) {
    throw std::invalid_argument("derive_moduli: young_modulus must be > 0");
  }
  if (!(nu > -1.0 && nu < 0.5)) {
    throw std::invalid_argument("derive_moduli: poisson_ratio must lie in (-1, 0.5)");
  }
  if (!(layer.thickness > 0.0) || !(layer.width > 0.0)) {
    throw std::invalid_argument("derive_moduli: thickness and width must be > 0");
  }

  DerivedModuli m;
  m.bulk_modulus = E / (3.0 * (1.0 - 2.0 * nu));
  m.shear_modulus = E / (2.0 * (1.0 + nu));
  m.shear_coefficient = (5.0 + 5.0 * nu) / (6.0 + 5.0 * nu);
  m.area = layer.thickness * layer.width;
  m.second_moment = layer.width * layer.thickness * layer.thickness * layer.thickness / 12.0;
  return m;
}

double compute_e13(std::span<const double> piezo_strain_constants,
                   std::span<const double> stiffness_row) {
  if (piezo_strain_constants.size() != 3 || stiffness_row.size() != 3) {
    throw std::invalid_argument("compute_e13: expected three d_3i and three c_1i entries");
  }
  double e13 = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    e13 += piezo_strain_constants[i] * stiffness_row[i];
  }
  return e13;
}

LayerStiffness compute_ki(const DerivedModuli& m, const StrainGradientScales& s) {
  if (s.l0 < 0.0 || s.l1 < 0.0 || s.l2 < 0.0) {
    throw std::invalid_argument("compute_ki: length scales must be >= 0");
  }
  const double mu = m.shear_modulus;
  const double I = m.second_moment;
  const double A = m.area;
  const double l0sq = s.l0 * s.l0;
  const double l1sq = s.l1 * s.l1;
  const double l2sq = s.l2 * s.l2;

  LayerStiffness k;
  k.k1 = mu * I * (2.0 * l0sq + 0.8 * l1sq);
  k.k2 = I * (m.bulk_modulus + 4.0 * mu / 3.0) + 2.0 * mu * A * l0sq;
  k.k3 = 0.25 * mu * A * l2sq;
  k.k4 = 8.0 * mu * A * l1sq / 15.0;
  k.k5 = m.shear_coefficient * mu * A;
  return k;
}

LumpedCoefficients compute_lumped(const MaterialLayer& beam, const MaterialLayer& piezo,
                                  const StrainGradientScales& scales, double moment_arm) {
  if (!(moment_arm > 0.0)) {
    throw std::invalid_argument("compute_lumped: moment arm must be > 0");
  }
  const DerivedModuli mb = derive_moduli(beam);
  const DerivedModuli mp = derive_moduli(piezo);

  LumpedCoefficients c;
  c.beam = compute_ki(mb, scales);
  c.piezo = compute_ki(mp, scales);

  c.A = piezo.density * piezo.thickness * piezo.width + beam.density * beam.thickness * beam.width;
  c.B = piezo.density * mp.second_moment + beam.density * mb.second_moment;
  c.C = c.piezo.k1 + c.beam.k1;
  c.D = c.piezo.k2 + c.beam.k2;
  c.E = c.piezo.k3 + c.beam.k3;
  c.F = c.piezo.k4 + c.beam.k4;
  c.G = c.piezo.k5 + c.beam.k5;
  c.H = moment_arm * piezo.e13 * piezo.width;
  return c;
}

double default_moment_arm(const MaterialLayer& beam, const MaterialLayer& piezo) {
  return 0.5 * (beam.thickness + piezo.thickness);
}

void validate(const NondimScales& s) {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(s.omega1)) {
    throw std::invalid_argument("nondimensional scales: omega1 must be > 0");
  }
  if (!positive(s.length) || !positive(s.density) || !positive(s.young_modulus)) {
    throw std::invalid_argument("nondimensional scales: length, density and modulus must be > 0");
  }
  if (!(std::isfinite(s.e13) && s.e13 != 0.0)) {
    throw std::invalid_argument("nondimensional scales: reference e13 must be nonzero");
  }
}

LumpedCoefficients scale_coefficients(const LumpedCoefficients& si, const NondimScales& s) {
  validate(s);
  const double L = s.length;
  const double L2 = L * L;
  const double L4 = L2 * L2;
  const double rho = s.density;
  const double w2 = s.omega1 * s.omega1;

  const double s_alpha_xx = 1.0 / (rho * L4 * L4 * w2);
  const double s_grad = 1.0 / (rho * L4 * L2 * w2);
  const double s_shear = 1.0 / (rho * L4 * w2);

  LumpedCoefficients nd;
  nd.A = si.A / (rho * L2);
  nd.B = si.B / (rho * L4);
  nd.C = si.C * s_alpha_xx;
  nd.D = si.D * s_grad;
  nd.E = si.E * s_grad;
  nd.F = si.F * s_grad;
  nd.G = si.G * s_shear;
  nd.H = si.H / (s.e13 * L2);
  nd.beam = scale(si.beam, s_alpha_xx, s_grad, s_shear);
  nd.piezo = scale(si.piezo, s_alpha_xx, s_grad, s_shear);
  return nd;
}

LumpedCoefficients unscale_coefficients(const LumpedCoefficients& nd, const NondimScales& s) {
  validate(s);
  const double L = s.length;
  const double L2 = L * L;
  const double L4 = L2 * L2;
  const double rho = s.density;
  const double w2 = s.omega1 * s.omega1;

  const double s_alpha_xx = rho * L4 * L4 * w2;
  const double s_grad = rho * L4 * L2 * w2;
  const double s_shear = rho * L4 * w2;

  LumpedCoefficients si;
  si.A = nd.A * rho * L2;
  si.B = nd.B * rho * L4;
  si.C = nd.C * s_alpha_xx;
  si.D = nd.D * s_grad;
  si.E = nd.E * s_grad;
  si.F = nd.F * s_grad;
  si.G = nd.G * s_shear;
  si.H = nd.H * s.e13 * L2;
  si.beam = scale(nd.beam, s_alpha_xx, s_grad, s_shear);
  si.piezo = scale(nd.piezo, s_alpha_xx, s_grad, s_shear);
  return si;
}

NondimParameters nondimensionalize(const DimensionalModel& m, const NondimScales& s) {
  validate(s);
  const double L = s.length;
  const double L4 = L * L * L * L;

  NondimParameters nd;
  nd.length = m.length / L;
  nd.width_beam = m.beam.width / L;
  nd.width_piezo = m.piezo.width / L;
  nd.thickness_beam = m.beam.thickness / L;
  nd.thickness_piezo = m.piezo.thickness / L;
  nd.density_beam = m.beam.density / s.density;
  nd.density_piezo = m.piezo.density / s.density;
  nd.second_moment_beam = m.beam.width * std::pow(m.beam.thickness, 3) / 12.0 / L4;
  nd.second_moment_piezo = m.piezo.width * std::pow(m.piezo.thickness, 3) / 12.0 / L4;
  nd.young_beam = m.beam.young_modulus / s.young_modulus;
  nd.young_piezo = m.piezo.young_modulus / s.young_modulus;
  nd.e13 = m.piezo.e13 / s.e13;
  nd.l0 = m.scales.l0 / L;
  nd.l1 = m.scales.l1 / L;
  nd.l2 = m.scales.l2 / L;
  nd.moment_arm = m.moment_arm / L;
  nd.coefficients = scale_coefficients(m.coefficients, s);
  return nd;
}

DimensionalModel redimensionalize(const NondimParameters& nd, const NondimScales& s) {
  validate(s);
  const double L = s.length;

  // Poisson ratios and permittivities are not part of the scaled set; callers
  // that need them keep the original layers.
  DimensionalModel m;
  m.length = nd.length * L;
  m.beam.width = nd.width_beam * L;
  m.piezo.width = nd.width_piezo * L;
  m.beam.thickness = nd.thickness_beam * L;
  m.piezo.thickness = nd.thickness_piezo * L;
  m.beam.density = nd.density_beam * s.density;
  m.piezo.density = nd.density_piezo * s.density;
  m.beam.young_modulus = nd.young_beam * s.young_modulus;
  m.piezo.young_modulus = nd.young_piezo * s.young_modulus;
  m.piezo.e13 = nd.e13 * s.e13;
  m.scales = {nd.l0 * L, nd.l1 * L, nd.l2 * L};
  m.moment_arm = nd.moment_arm * L;
  m.coefficients = unscale_coefficients(nd.coefficients, s);
  return m;
}

double to_nondim_position(double x, const NondimScales& s) { return x / s.length; }
double to_nondim_time(double t, const NondimScales& s) { return t * s.omega1; }
double from_nondim_time(double t, const NondimScales& s) { return t / s.omega1; }

double to_nondim_voltage(double u, const NondimScales& s) {
  return u * s.e13 / (s.density * s.length * s.length * s.length * s.omega1 * s.omega1);
}

double from_nondim_voltage(double u, const NondimScales& s) {
  return u * s.density * s.length * s.length * s.length * s.omega1 * s.omega1 / s.e13;
}

double gain_to_si(double gain_nondim, const NondimScales& s) {
  return gain_nondim * s.density * s.length * s.length * s.length * s.omega1 / s.e13;
}

} // namespace sgbeam
