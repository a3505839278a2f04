#include "sgbeam/model.hpp"

#include "sgbeam/dynamics.hpp"

#include <cmath>

namespace sgbeam {

ModelInputs default_inputs() {
  ModelInputs in;
  in.beam = {.young_modulus = 73e9,
             .poisson_ratio = 0.17,
             .density = 2200.0,
             .thickness = 10e-6,
             .width = 30e-6,
             .e13 = 0.0,
             .permittivity_33 = 0.0};
  in.piezo = {.young_modulus = 71e9,
              .poisson_ratio = 0.31,
              .density = 7700.0,
              .thickness = 10e-6,
              .width = 30e-6,
              .e13 = -3.621,
              .permittivity_33 = 1700.0 * 8.8541878128e-12};
  in.scales = {5e-6, 5e-6, 5e-6};
  in.length = 90e-6;
  return in;
}

NondimScales reference_scales(const ModelInputs& in) {
  NondimScales s;
  s.length = in.length;
  s.density = in.beam.density;
  s.young_modulus = in.beam.young_modulus;
  s.omega1 = std::sqrt(in.beam.young_modulus / in.beam.density) / in.length;
  // A piezo-free layup has no natural charge scale; any nonzero value works.
  s.e13 = in.piezo.e13 != 0.0 ? in.piezo.e13 : 1.0;
  return s;
}

BeamModel build_model(const ModelInputs& in) {
  DimensionalModel dim;
  dim.beam = in.beam;
  dim.piezo = in.piezo;
  dim.scales = in.scales;
  dim.length = in.length;
  dim.moment_arm = in.moment_arm.value_or(default_moment_arm(in.beam, in.piezo));
  dim.coefficients = compute_lumped(in.beam, in.piezo, in.scales, dim.moment_arm);

  const Mesh mesh = Mesh::uniform(1.0, in.n_elements);

  // Stage 1: elastic time scale, only to find omega1.
  NondimScales scales = reference_scales(in);
  const LumpedCoefficients reference = scale_coefficients(dim.coefficients, scales);
  const GlobalSystem probe = apply_clamp(assemble(mesh, reference, in.quadrature_order));
  scales.omega1 *= eigenfrequencies(probe, 1).omega(0);

  // Stage 2: time in units of 1/omega1.
  NondimParameters nd = nondimensionalize(dim, scales);
  GlobalSystem system = apply_clamp(assemble(mesh, nd.coefficients, in.quadrature_order));
  return BeamModel{std::move(dim), scales, std::move(nd), mesh, std::move(system)};
}

} // namespace sgbeam
