#pragma once

#include <array>
#include <span>

namespace sgbeam {

/// Elastic, piezoelectric, inertial and geometric data of one lamina.
/// SI units throughout. Non-piezo layers carry e13 = permittivity_33 = 0.
struct MaterialLayer {
  double young_modulus = 0.0;   // Pa
  double poisson_ratio = 0.0;
  double density = 0.0;         // kg/m^3
  double thickness = 0.0;       // m
  double width = 0.0;           // m
  double e13 = 0.0;             // C/m^2
  double permittivity_33 = 0.0; // F/m

  bool operator==(const MaterialLayer&) const = default;
};

/// Checks every MaterialLayer invariant; throws std::invalid_argument naming
/// the offending field prefixed by `path`.
void validate(const MaterialLayer& layer, const char* path = "layer");

/// Material length scales of strain gradient elasticity. All zero gives the
/// classical Timoshenko beam.
struct StrainGradientScales {
  double l0 = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;

  bool operator==(const StrainGradientScales&) const = default;
};

struct DerivedModuli {
  double bulk_modulus = 0.0;
  double shear_modulus = 0.0;
  double shear_coefficient = 0.0;
  double area = 0.0;
  double second_moment = 0.0;
};

/// k1..k5 of a single lamina.
struct LayerStiffness {
  double k1 = 0.0; ///< couples alpha_xx^2
  double k2 = 0.0; ///< couples alpha_x^2
  double k3 = 0.0; ///< couples (v_xx + alpha_x)^2
  double k4 = 0.0; ///< couples (2 alpha_x - v_xx)^2
  double k5 = 0.0; ///< couples (v_x - alpha)^2
};

/// Cross-section integrated coefficients of the laminated beam.
///
/// The line energy density is
///   1/2 [A v_t^2 + B alpha_t^2 + C alpha_xx^2 + D alpha_x^2
///        + E (v_xx + alpha_x)^2 + F (2 alpha_x - v_xx)^2 + G (v_x - alpha)^2]
/// and H couples the actuator voltage to alpha_x.
struct LumpedCoefficients {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double D = 0.0;
  double E = 0.0;
  double F = 0.0;
  double G = 0.0;
  double H = 0.0;
  LayerStiffness beam{};
  LayerStiffness piezo{};
};

/// k = E/(3(1-2nu)), mu = E/(2(1+nu)), ks = (5+5nu)/(6+5nu), A = h b,
/// I = b h^3 / 12. Rejects nu outside (-1, 0.5).
DerivedModuli derive_moduli(const MaterialLayer& layer);

/// e13 = sum_i d_3i c_1i.
double compute_e13(std::span<const double> piezo_strain_constants,
                   std::span<const double> stiffness_row);

LayerStiffness compute_ki(const DerivedModuli& moduli, const StrainGradientScales& scales);

/// Sums beam and piezo contributions. `moment_arm` is the effective distance
/// from the composite mid-plane to the actuator mid-plane.
LumpedCoefficients compute_lumped(const MaterialLayer& beam, const MaterialLayer& piezo,
                                  const StrainGradientScales& scales, double moment_arm);

/// Default moment arm: (h_beam + h_piezo) / 2.
double default_moment_arm(const MaterialLayer& beam, const MaterialLayer& piezo);

/// Reference scales used to make the model dimensionless.
struct NondimScales {
  double length = 0.0;          ///< beam length L
  double omega1 = 0.0;          ///< first natural frequency, rad/s; time scale is 1/omega1
  double density = 0.0;         ///< rho of the beam layer
  double young_modulus = 0.0;   ///< E of the beam layer
  double e13 = 0.0;             ///< reference piezo constant (the actuator's e13)
};

/// Geometry and material description in SI units, the input of nondimensionalize.
struct DimensionalModel {
  MaterialLayer beam;
  MaterialLayer piezo;
  StrainGradientScales scales;
  double length = 0.0;
  double moment_arm = 0.0;
  LumpedCoefficients coefficients;
};

/// Every scaled quantity, plus the scaled lumped coefficients used by the solver.
struct NondimParameters {
  double length = 1.0;
  double width_beam = 0.0;
  double width_piezo = 0.0;
  double thickness_beam = 0.0;
  double thickness_piezo = 0.0;
  double density_beam = 1.0;
  double density_piezo = 0.0;
  double second_moment_beam = 0.0;
  double second_moment_piezo = 0.0;
  double young_beam = 1.0;
  double young_piezo = 0.0;
  double e13 = 1.0;
  double l0 = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
  double moment_arm = 0.0;
  LumpedCoefficients coefficients;
};

/// Scales A..H to dimensionless form for lengths L, density rho and time 1/omega:
/// A/(rho L^2), B/(rho L^4), C/(rho L^8 w^2), D,E,F/(rho L^6 w^2),
/// G/(rho L^4 w^2), H/(e13 L^2). The per-layer k's scale with their targets.
LumpedCoefficients scale_coefficients(const LumpedCoefficients& si, const NondimScales& scales);
LumpedCoefficients unscale_coefficients(const LumpedCoefficients& nd, const NondimScales& scales);

NondimParameters nondimensionalize(const DimensionalModel& model, const NondimScales& scales);
DimensionalModel redimensionalize(const NondimParameters& nd, const NondimScales& scales);

double to_nondim_position(double x, const NondimScales& s);
double to_nondim_time(double t, const NondimScales& s);
double to_nondim_voltage(double u, const NondimScales& s);
double from_nondim_time(double t, const NondimScales& s);
double from_nondim_voltage(double u, const NondimScales& s);

/// Converts a dimensionless feedback gain (u~ per alpha~_t~) to SI (V s/rad).
double gain_to_si(double gain_nondim, const NondimScales& s);

void validate(const NondimScales& scales);

} // namespace sgbeam
