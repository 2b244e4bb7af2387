#pragma once

#include <optional>

#include "graphene.hpp"
#include "materials.hpp"
#include "units.hpp"

namespace caspol {

// One graphene sheet (optional) on one material half-space.
struct Surface {
  PermittivityModel plate;
  std::optional<GrapheneSheet> coating;

  bool coated() const { return coating.has_value() && coating->present; }
  const GrapheneSheet& sheet() const { return *coating; }
};

// k_l = sqrt(y^2 + (eps - 1) zeta^2); equals y at zeta = 0 or eps = 1.
double k_parameter(double eps, double zeta, double y);

// TM/TE reflection coefficients at nonzero imaginary frequency.  These take
// the pre-evaluated permittivity eps_l and tensor pair so the engine can
// cache per-frequency quantities across the y grid.  eps may be +infinity
// (perfect conductor).  Uncoated plates pass a zero TensorPair.
double r_tm(double eps, double zeta, double y, const TensorPair& t);
double r_te(double eps, double zeta, double y, const TensorPair& t);

// Zero-frequency branches.  TM: 1 for metals; Fresnel static form for bare
// dielectrics; thermal-tensor form for coated dielectrics.  TE at zero
// frequency never contributes to observables (the zeta_l^2 prefactor kills
// it) and is exposed for diagnostics only.
double r_tm_zero_freq(const Surface& s, double y, double tau,
                      const Constants& k = default_constants());
double r_te_zero_freq(const Surface& s, double y, double tau,
                      const Constants& k = default_constants());

}  // namespace caspol
