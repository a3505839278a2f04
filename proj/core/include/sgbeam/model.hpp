#pragma once

#include "sgbeam/assembly.hpp"
#include "sgbeam/model_params.hpp"

#include <optional>

namespace sgbeam {

/// SI description of the laminated cantilever and its discretization.
struct ModelInputs {
  MaterialLayer beam;
  MaterialLayer piezo;
  StrainGradientScales scales;
  double length = 0.0;
  std::optional<double> moment_arm;  ///< defaults to (h_beam + h_piezo) / 2
  int n_elements = 10;
  int quadrature_order = kDefaultQuadratureOrder;
};

/// Silicon dioxide beam with a PZT actuator, 90 x 30 x 10 um each, and
/// strain gradient length scales of half the beam thickness.
ModelInputs default_inputs();

/// Fully prepared dimensionless model: the clamped system is expressed in
/// lengths of L, densities of rho_beam and time in units of 1/omega1, so the
/// first natural frequency of `system` is 1.
struct BeamModel {
  DimensionalModel dimensional;
  NondimScales scales;
  NondimParameters nondim;
  Mesh mesh;
  GlobalSystem system;

  double omega_to_si(double omega_nondim) const { return omega_nondim * scales.omega1; }
};

BeamModel build_model(const ModelInputs& inputs);

/// Scales used before omega1 is known: time unit L sqrt(rho_beam / E_beam).
NondimScales reference_scales(const ModelInputs& inputs);

} // namespace sgbeam
