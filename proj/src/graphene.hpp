#pragma once

#include "units.hpp"

namespace caspol {

struct GrapheneSheet {
  double fermi_velocity_ratio = default_constants().fermi_velocity_ratio;
  bool present = true;
};

// Dimensionless tensor components in the combination the reflection
// coefficients consume: Pi00 and Pi_tr - y^2/(y^2 - zeta^2) * Pi00.
struct TensorPair {
  double pi00 = 0.0;
  double pi_tr_minus_weighted_pi00 = 0.0;
};

// Thermal zero-frequency components (undoped gapless sheet).  Quadrature
// relative error <= 1e-8.
double pi00_thermal_zero_freq(const GrapheneSheet& sheet, double y, double tau,
                              const Constants& k = default_constants());
double pi_tr_minus_pi00_thermal_zero_freq(
    const GrapheneSheet& sheet, double y, double tau,
    const Constants& k = default_constants());

// Closed-form components at T = 0, evaluated at continuous zeta >= 0.
TensorPair zero_temperature_tensor(const GrapheneSheet& sheet, double zeta,
                                   double y,
                                   const Constants& k = default_constants());

// Same closed forms at the discrete nonzero Matsubara frequencies.
TensorPair tensor_at_nonzero_matsubara(
    const GrapheneSheet& sheet, double zeta_l, double y,
    const Constants& k = default_constants());

}  // namespace caspol
