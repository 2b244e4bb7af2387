#include "atoms.hpp"

#include <cmath>

namespace caspol {

AtomModel::AtomModel(std::string label, double alpha0_au, double omega0_ev)
    : name(std::move(label)),
      static_polarizability_au(alpha0_au),
      characteristic_frequency_ev(omega0_ev) {
  if (!(alpha0_au > 0.0) || !std::isfinite(alpha0_au))
    fail(ErrorCode::InvalidArgument,
         "atom '" + name + "': static polarizability must be positive");
  if (!(omega0_ev > 0.0) || !std::isfinite(omega0_ev))
    fail(ErrorCode::InvalidArgument,
         "atom '" + name + "': characteristic frequency must be positive");
}

double polarizability_at(const AtomModel& atom, double xi_ev) {
  if (!(xi_ev >= 0.0))
    fail(ErrorCode::InvalidArgument, "polarizability: xi must be >= 0");
  const double r = xi_ev / atom.characteristic_frequency_ev;
  return atom.static_polarizability_au / (1.0 + r * r);
}

const std::vector<AtomModel>& builtin_atoms() {
  static const std::vector<AtomModel> catalog = {
      AtomModel("Rb", 319.9, 5.46),
      AtomModel("Na", 162.68, 2.14),
      AtomModel("Cs", 403.6, 1.55),
      AtomModel("He*", 315.638, 1.18),
  };
  return catalog;
}

const AtomModel& builtin_atom(std::string_view name) {
  for (const auto& atom : builtin_atoms()) {
    if (name == atom.name) return atom;
    if (atom.name == "He*" && (name == "He-star" || name == "Hestar"))
      return atom;
  }
  std::string msg = "unknown atom '" + std::string(name) + "'; available:";
  for (const auto& atom : builtin_atoms()) msg += " " + atom.name;
  fail(ErrorCode::UnknownName, msg);
}

}  // namespace caspol
