#pragma once

#include <optional>

#include "atoms.hpp"
#include "graphene.hpp"
#include "lifshitz.hpp"
#include "units.hpp"

namespace caspol {

// Classical (high-temperature / large-separation) closed forms.  Values are
// SI: Joules for free energies, Newtons for forces.
struct ClassicalExpansion {
  double leading = 0.0;
  double first_correction = 0.0;
  double second_correction = 0.0;
  double total = 0.0;
};

struct ClassicalPi00 {
  double value = 0.0;
  // true when the small-argument regime check (pi vF y/(2 tau) < 0.05 at
  // y = 1, the dominant scale of the y-integral) does not hold
  bool extrapolated = false;
};

// y-independent zero-frequency tensor component in the classical regime,
// 8 alpha ln2 tau / (pi vF^2).
ClassicalPi00 pi00_classical(const Geometry& g, const GrapheneSheet& sheet,
                             const Constants& k = default_constants());

// eps0 = nullopt selects the metal branch (leading term only, corrections
// zero).  The dielectric expansion must not be called with infinite eps0.
ClassicalExpansion classical_free_energy_coated(
    const AtomModel& atom, const Geometry& g, std::optional<double> eps0,
    const GrapheneSheet& sheet = {}, const Constants& k = default_constants());

ClassicalExpansion classical_force_coated(
    const AtomModel& atom, const Geometry& g, std::optional<double> eps0,
    const GrapheneSheet& sheet = {}, const Constants& k = default_constants());

double classical_free_energy_bare(const AtomModel& atom, const Geometry& g,
                                  std::optional<double> eps0,
                                  const Constants& k = default_constants());

double classical_force_bare(const AtomModel& atom, const Geometry& g,
                            std::optional<double> eps0,
                            const Constants& k = default_constants());

// Smallest separation on a geometric grid (50 points/decade, 1-20 um) where
// the full engine and the matching classical expression agree within rel_tol
// and stay within it for all larger grid points.  Returns nm.
double crossover_separation_nm(const Surface& s, const AtomModel& atom,
                               double temperature_K, double rel_tol,
                               Kind kind = Kind::Force,
                               const ComputeSettings& settings = {},
                               const Constants& k = default_constants());

}  // namespace caspol
