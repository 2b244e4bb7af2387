#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace caspol {

// Single-oscillator model of the atomic dynamic polarizability,
// alpha(i xi) = alpha(0) / (1 + xi^2/omega_0^2).
struct AtomModel {
  std::string name;
  double static_polarizability_au = 0.0;   // alpha(0), atomic units
  double characteristic_frequency_ev = 0.0;  // omega_0

  AtomModel() = default;
  AtomModel(std::string label, double alpha0_au, double omega0_ev);
};

// Dynamic polarizability at imaginary frequency xi (eV), in atomic units.
double polarizability_at(const AtomModel& atom, double xi_ev);

// Catalog: Rb, Na, Cs, He*.
const AtomModel& builtin_atom(std::string_view name);
const std::vector<AtomModel>& builtin_atoms();

}  // namespace caspol
