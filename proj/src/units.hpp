#pragma once

#include <cmath>
#include <numbers>

#include "errors.hpp"

// Unit conventions used throughout the library: energies in eV, lengths in
// nm, temperatures in K.  Conversion to SI happens only at API boundaries.

namespace caspol {

struct Constants {
  double hbar_c = 197.327;                          // eV nm
  double boltzmann = 8.617333e-5;                   // eV / K
  double fine_structure = 7.2973525693e-3;          // e^2/(hbar c)
  double fermi_velocity_ratio = 9.0e5 / 2.99792458e8;  // v_F/c for graphene
  double polarizability_au = 1.482e-4;              // nm^3 per atomic unit
};

inline const Constants& default_constants() {
  static const Constants k;
  return k;
}

// SI conversions applied at output boundaries.
inline constexpr double joule_per_ev = 1.602176634e-19;
inline constexpr double newton_per_ev_nm = 1.602176634e-10;
inline constexpr double nm_per_m = 1.0e9;

struct Geometry {
  double separation_nm = 0.0;
  double temperature_K = 0.0;

  Geometry() = default;
  Geometry(double a_nm, double T_K) : separation_nm(a_nm), temperature_K(T_K) {
    if (!(a_nm > 0.0) || !std::isfinite(a_nm))
      fail(ErrorCode::InvalidArgument, "separation must be positive");
    if (!(T_K >= 0.0) || !std::isfinite(T_K))
      fail(ErrorCode::InvalidArgument, "temperature must be non-negative");
  }
};

// Characteristic frequency omega_c = c/(2a), returned as hbar*omega_c in eV.
inline double omega_c_ev(const Geometry& g,
                         const Constants& k = default_constants()) {
  return k.hbar_c / (2.0 * g.separation_nm);
}

// Dimensionless temperature parameter, equal to the Matsubara spacing
// zeta_{l+1} - zeta_l.
inline double tau(const Geometry& g, const Constants& k = default_constants()) {
  return 4.0 * std::numbers::pi * g.separation_nm * k.boltzmann *
         g.temperature_K / k.hbar_c;
}

// Dimensionless Matsubara frequency zeta_l = l * tau.  Discrete frequencies
// are undefined at T = 0; callers must use the zero-temperature integral.
inline double matsubara_zeta(const Geometry& g, long l,
                             const Constants& k = default_constants()) {
  if (l < 0) fail(ErrorCode::InvalidArgument, "Matsubara index must be >= 0");
  if (!(g.temperature_K > 0.0))
    fail(ErrorCode::Domain,
         "Matsubara frequencies are undefined at T = 0; "
         "use the zero-temperature path");
  return static_cast<double>(l) * tau(g, k);
}

}  // namespace caspol
