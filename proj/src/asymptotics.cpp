#include "asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace caspol {

namespace {

constexpr double kLn2 = std::numbers::ln2;

double leading_free_energy_ev(const AtomModel& atom, const Geometry& g,
                              const Constants& k) {
  const double a = g.separation_nm;
  const double alpha0_nm3 = atom.static_polarizability_au * k.polarizability_au;
  return -k.boltzmann * g.temperature_K * alpha0_nm3 / (4.0 * a * a * a);
}

// Expansion parameter 1/Pi00(0) of the classical reflection coefficient.
double inverse_pi00(const Geometry& g, const GrapheneSheet& sheet,
                    const Constants& k) {
  const double vf = sheet.fermi_velocity_ratio;
  return std::numbers::pi * vf * vf /
         (8.0 * k.fine_structure * kLn2 * tau(g, k));
}

}  // namespace

ClassicalPi00 pi00_classical(const Geometry& g, const GrapheneSheet& sheet,
                             const Constants& k) {
  const double t = tau(g, k);
  ClassicalPi00 out;
  if (t > 0.0) {
    const double vf = sheet.fermi_velocity_ratio;
    out.value = 8.0 * k.fine_structure * kLn2 * t / (std::numbers::pi * vf * vf);
    out.extrapolated = std::numbers::pi * vf / (2.0 * t) >= 0.05;
  } else {
    out.value = 0.0;
    out.extrapolated = true;
  }
  return out;
}

ClassicalExpansion classical_free_energy_coated(const AtomModel& atom,
                                                const Geometry& g,
                                                std::optional<double> eps0,
                                                const GrapheneSheet& sheet,
                                                const Constants& k) {
  ClassicalExpansion e;
  e.leading = leading_free_energy_ev(atom, g, k) * joule_per_ev;
  if (eps0) {
    if (!(*eps0 >= 1.0))
      fail(ErrorCode::InvalidArgument, "classical expansion needs eps0 >= 1");
    const double p = inverse_pi00(g, sheet, k);
    e.first_correction = e.leading * (-6.0 * p);
    e.second_correction = e.leading * (24.0 * (*eps0 + 1.0) * p * p);
  }
  e.total = e.leading + e.first_correction + e.second_correction;
  return e;
}

ClassicalExpansion classical_force_coated(const AtomModel& atom,
                                          const Geometry& g,
                                          std::optional<double> eps0,
                                          const GrapheneSheet& sheet,
                                          const Constants& k) {
  ClassicalExpansion e;
  const double lead_ev_nm =
      3.0 * leading_free_energy_ev(atom, g, k) / g.separation_nm;
  e.leading = lead_ev_nm * newton_per_ev_nm;
  if (eps0) {
    if (!(*eps0 >= 1.0))
      fail(ErrorCode::InvalidArgument, "classical expansion needs eps0 >= 1");
    const double p = inverse_pi00(g, sheet, k);
    e.first_correction = e.leading * (-8.0 * p);
    e.second_correction = e.leading * (40.0 * (*eps0 + 1.0) * p * p);
  }
  e.total = e.leading + e.first_correction + e.second_correction;
  return e;
}

double classical_free_energy_bare(const AtomModel& atom, const Geometry& g,
                                  std::optional<double> eps0,
                                  const Constants& k) {
  const double lead = leading_free_energy_ev(atom, g, k) * joule_per_ev;
  if (!eps0) return lead;
  if (!(*eps0 >= 1.0))
    fail(ErrorCode::InvalidArgument, "classical expression needs eps0 >= 1");
  return lead * (*eps0 - 1.0) / (*eps0 + 1.0);
}

double classical_force_bare(const AtomModel& atom, const Geometry& g,
                            std::optional<double> eps0, const Constants& k) {
  const double lead = 3.0 * leading_free_energy_ev(atom, g, k) /
                      g.separation_nm * newton_per_ev_nm;
  if (!eps0) return lead;
  if (!(*eps0 >= 1.0))
    fail(ErrorCode::InvalidArgument, "classical expression needs eps0 >= 1");
  return lead * (*eps0 - 1.0) / (*eps0 + 1.0);
}

double crossover_separation_nm(const Surface& s, const AtomModel& atom,
                               double temperature_K, double rel_tol,
                               Kind kind, const ComputeSettings& settings,
                               const Constants& k) {
  if (!(rel_tol > 0.0 && rel_tol < 0.5))
    fail(ErrorCode::InvalidArgument, "crossover rel_tol must lie in (0, 0.5)");
  if (!(temperature_K > 0.0))
    fail(ErrorCode::Domain, "crossover analysis needs T > 0");

  const auto eps0 = s.plate.static_limit();
  const GrapheneSheet sheet = s.coated() ? s.sheet() : GrapheneSheet{};

  // 50 points per decade over 1-20 um
  std::vector<double> grid;
  for (int i = 0;; ++i) {
    const double a = 1000.0 * std::pow(10.0, i / 50.0);
    if (a > 20000.0 * (1.0 + 1e-12)) break;
    grid.push_back(a);
  }

  std::vector<double> dev(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Geometry g(grid[i], temperature_K);
    double engine, classical;
    if (kind == Kind::Force) {
      engine = force(s, atom, g, settings, k).value_si;
      classical = s.coated()
                      ? classical_force_coated(atom, g, eps0, sheet, k).total
                      : classical_force_bare(atom, g, eps0, k);
    } else {
      engine = free_energy(s, atom, g, settings, k).value_si;
      classical =
          s.coated()
              ? classical_free_energy_coated(atom, g, eps0, sheet, k).total
              : classical_free_energy_bare(atom, g, eps0, k);
    }
    dev[i] = std::fabs((engine - classical) / engine);
  }

  for (std::size_t i = 0; i < grid.size(); ++i) {
    bool all_below = true;
    for (std::size_t j = i; j < grid.size(); ++j) {
      if (dev[j] > rel_tol) {
        all_below = false;
        break;
      }
    }
    if (all_below) return grid[i];
  }
  std::ostringstream msg;
  msg << "classical limit not reached within " << rel_tol
      << " on the 1-20 um grid (smallest deviation " << dev.back() << ")";
  fail(ErrorCode::NoConvergence, msg.str());
}

}  // namespace caspol
