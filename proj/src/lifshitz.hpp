#pragma once

#include <string>
#include <vector>

#include "atoms.hpp"
#include "reflection.hpp"
#include "units.hpp"

namespace caspol {

enum class Kind { FreeEnergy, Force };
enum class RatioKind { FreeEnergy, Force, EnergyT0 };

struct ComputeSettings {
  double quad_rel_tol = 1e-8;
  double sum_rel_tol = 1e-9;
  long max_matsubara_terms = 100000;
  double zero_t_freq_tol = 1e-8;
  int threads = 0;  // sweep parallelism; 0 = hardware concurrency

  void validate() const;
};

struct CPResult {
  // Joules for energies, Newtons for forces; negative (attractive).
  double value_si = 0.0;
  // value * 8a^3/(k_B T alpha(0)) (energy), value * 8a^4/(k_B T alpha(0))
  // (force).  For the T = 0 energy, where k_B T degenerates, this is the
  // raw double integral value * 32 pi a^4/(hbar c alpha(0)).
  double dimensionless_value = 0.0;
  long terms_used = 0;
  double est_error = 0.0;  // relative
};

// Single Matsubara term: alpha(i zeta_l omega_c) in atomic units times the
// dimensionless y-integral, with the l = 0 term halved (primed sum).
double matsubara_term(const Surface& s, const AtomModel& atom,
                      const Geometry& g, long l, Kind kind,
                      const ComputeSettings& settings = {},
                      const Constants& k = default_constants());

CPResult free_energy(const Surface& s, const AtomModel& atom,
                     const Geometry& g, const ComputeSettings& settings = {},
                     const Constants& k = default_constants());

CPResult force(const Surface& s, const AtomModel& atom, const Geometry& g,
               const ComputeSettings& settings = {},
               const Constants& k = default_constants());

// Casimir-Polder energy at T = 0: the primed Matsubara sum becomes a
// continuous frequency integral and the graphene tensor takes its
// zero-temperature form at all frequencies.
CPResult energy_zero_temperature(const Surface& s, const AtomModel& atom,
                                 const Geometry& g,
                                 const ComputeSettings& settings = {},
                                 const Constants& k = default_constants());

struct RatioPoint {
  double separation_nm = 0.0;
  double ratio = 0.0;
  bool ok = false;
  std::string message;
};

// Element-wise coated/bare ratio over a separation grid.  Points run
// concurrently (settings.threads); output order follows the input and is
// bitwise independent of the thread count.  Failures are reported per point.
std::vector<RatioPoint> ratio_sweep(const Surface& coated, const Surface& bare,
                                    const AtomModel& atom,
                                    const std::vector<double>& separations_nm,
                                    double temperature_K, RatioKind kind,
                                    const ComputeSettings& settings = {},
                                    const Constants& k = default_constants());

}  // namespace caspol
