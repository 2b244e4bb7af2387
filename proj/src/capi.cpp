#include "caspol.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <string>

#include "asymptotics.hpp"
#include "atoms.hpp"
#include "lifshitz.hpp"
#include "materials.hpp"
#include "version.hpp"

struct caspol_atom {
  caspol::AtomModel model;
};

struct caspol_material {
  caspol::PermittivityModel model;
};

namespace {

thread_local std::string g_last_error;

caspol_status to_status(caspol::ErrorCode code) {
  using caspol::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return CASPOL_ERR_INVALID_ARGUMENT;
    case ErrorCode::UnknownName: return CASPOL_ERR_UNKNOWN_NAME;
    case ErrorCode::Domain: return CASPOL_ERR_DOMAIN;
    case ErrorCode::Parse: return CASPOL_ERR_PARSE;
    case ErrorCode::Io: return CASPOL_ERR_IO;
    case ErrorCode::NoConvergence: return CASPOL_ERR_NO_CONVERGENCE;
  }
  return CASPOL_ERR_INTERNAL;
}

template <class Fn>
caspol_status guarded(Fn&& fn) {
  try {
    fn();
    return CASPOL_OK;
  } catch (const caspol::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CASPOL_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return CASPOL_ERR_INTERNAL;
  }
}

caspol_status require(bool ok, const char* what) {
  if (ok) return CASPOL_OK;
  g_last_error = what;
  return CASPOL_ERR_INVALID_ARGUMENT;
}

caspol::Constants to_constants(const caspol_constants* c) {
  if (!c) return caspol::default_constants();
  caspol::Constants k;
  k.hbar_c = c->hbar_c_ev_nm;
  k.boltzmann = c->boltzmann_ev_per_k;
  k.fine_structure = c->fine_structure;
  k.fermi_velocity_ratio = c->fermi_velocity_ratio;
  k.polarizability_au = c->polarizability_au_m3 * 1e27;  // m^3 -> nm^3
  return k;
}

caspol::ComputeSettings to_settings(const caspol_settings* s) {
  if (!s) return {};
  caspol::ComputeSettings cs;
  cs.quad_rel_tol = s->quad_rel_tol;
  cs.sum_rel_tol = s->sum_rel_tol;
  cs.max_matsubara_terms = s->max_matsubara_terms;
  cs.zero_t_freq_tol = s->zero_t_freq_tol;
  cs.threads = s->threads;
  return cs;
}

caspol::Surface make_surface(const caspol_material* plate, int coated,
                             const caspol::Constants& k) {
  caspol::Surface s{plate->model, std::nullopt};
  if (coated) s.coating = caspol::GrapheneSheet{k.fermi_velocity_ratio, true};
  return s;
}

caspol::CPResult run_quantity(const caspol::Surface& s,
                              const caspol::AtomModel& atom,
                              const caspol::Geometry& g,
                              caspol_quantity quantity,
                              const caspol::ComputeSettings& settings,
                              const caspol::Constants& k) {
  switch (quantity) {
    case CASPOL_FREE_ENERGY: return caspol::free_energy(s, atom, g, settings, k);
    case CASPOL_FORCE: return caspol::force(s, atom, g, settings, k);
    case CASPOL_ENERGY_T0:
      return caspol::energy_zero_temperature(s, atom, g, settings, k);
  }
  caspol::fail(caspol::ErrorCode::InvalidArgument, "unknown quantity");
}

}  // namespace

extern "C" {

const char* caspol_version(void) { return caspol::kVersion; }

const char* caspol_last_error(void) { return g_last_error.c_str(); }

void caspol_constants_default(caspol_constants* out) {
  if (!out) return;
  const caspol::Constants& k = caspol::default_constants();
  out->hbar_c_ev_nm = k.hbar_c;
  out->boltzmann_ev_per_k = k.boltzmann;
  out->fine_structure = k.fine_structure;
  out->fermi_velocity_ratio = k.fermi_velocity_ratio;
  out->polarizability_au_m3 = k.polarizability_au * 1e-27;  // nm^3 -> m^3
}

void caspol_settings_default(caspol_settings* out) {
  if (!out) return;
  const caspol::ComputeSettings s;
  out->quad_rel_tol = s.quad_rel_tol;
  out->sum_rel_tol = s.sum_rel_tol;
  out->max_matsubara_terms = s.max_matsubara_terms;
  out->zero_t_freq_tol = s.zero_t_freq_tol;
  out->threads = s.threads;
}

caspol_status caspol_atom_builtin(const char* name, caspol_atom** out) {
  if (auto st = require(name && out, "atom_builtin: NULL argument")) return st;
  return guarded([&] { *out = new caspol_atom{caspol::builtin_atom(name)}; });
}

caspol_status caspol_atom_custom(const char* name, double alpha0_au,
                                 double omega0_ev, caspol_atom** out) {
  if (auto st = require(name && out, "atom_custom: NULL argument")) return st;
  return guarded([&] {
    *out = new caspol_atom{caspol::AtomModel(name, alpha0_au, omega0_ev)};
  });
}

void caspol_atom_free(caspol_atom* atom) { delete atom; }

caspol_status caspol_atom_polarizability(const caspol_atom* atom, double xi_ev,
                                         double* out_au) {
  if (auto st = require(atom && out_au, "atom_polarizability: NULL argument"))
    return st;
  return guarded([&] { *out_au = caspol::polarizability_at(atom->model, xi_ev); });
}

caspol_status caspol_material_builtin(const char* name, caspol_material** out) {
  if (auto st = require(name && out, "material_builtin: NULL argument"))
    return st;
  return guarded(
      [&] { *out = new caspol_material{caspol::builtin_material(name)}; });
}

caspol_status caspol_material_drude(double wp_ev, double gamma_ev,
                                    caspol_material** out) {
  if (auto st = require(out != nullptr, "material_drude: NULL argument"))
    return st;
  return guarded([&] {
    *out = new caspol_material{caspol::PermittivityModel::drude(wp_ev, gamma_ev)};
  });
}

caspol_status caspol_material_plasma(double wp_ev, caspol_material** out) {
  if (auto st = require(out != nullptr, "material_plasma: NULL argument"))
    return st;
  return guarded([&] {
    *out = new caspol_material{caspol::PermittivityModel::plasma(wp_ev)};
  });
}

caspol_status caspol_material_oscillators(const double* strength,
                                          const double* resonance_ev,
                                          const double* damping_ev,
                                          size_t count, caspol_material** out) {
  if (auto st = require(strength && resonance_ev && out && count > 0,
                        "material_oscillators: NULL argument or empty list"))
    return st;
  return guarded([&] {
    std::vector<caspol::LorentzOscillator> oscs(count);
    for (size_t i = 0; i < count; ++i)
      oscs[i] = {strength[i], resonance_ev[i], damping_ev ? damping_ev[i] : 0.0};
    *out = new caspol_material{
        caspol::PermittivityModel::oscillators(std::move(oscs))};
  });
}

caspol_status caspol_material_perfect_conductor(caspol_material** out) {
  if (auto st = require(out != nullptr, "material_perfect_conductor: NULL"))
    return st;
  *out = new caspol_material{caspol::PermittivityModel::perfect_conductor()};
  return CASPOL_OK;
}

caspol_status caspol_material_vacuum(caspol_material** out) {
  if (auto st = require(out != nullptr, "material_vacuum: NULL")) return st;
  *out = new caspol_material{caspol::PermittivityModel::vacuum()};
  return CASPOL_OK;
}

caspol_status caspol_material_tabulated(const double* xi_ev, const double* eps,
                                        size_t count, caspol_material** out) {
  if (auto st = require(xi_ev && eps && out && count >= 2,
                        "material_tabulated: NULL argument or short table"))
    return st;
  return guarded([&] {
    std::vector<std::pair<double, double>> grid(count);
    for (size_t i = 0; i < count; ++i) grid[i] = {xi_ev[i], eps[i]};
    *out = new caspol_material{caspol::PermittivityModel::tabulated(grid)};
  });
}

caspol_status caspol_material_from_db(const char* path, const char* name,
                                      caspol_material** out) {
  if (auto st = require(path && name && out, "material_from_db: NULL argument"))
    return st;
  return guarded([&] {
    const auto records = caspol::load_materials_db_file(path);
    for (const auto& [n, m] : records) {
      if (n == name) {
        *out = new caspol_material{m};
        return;
      }
    }
    caspol::fail(caspol::ErrorCode::UnknownName,
                 "material '" + std::string(name) + "' not found in " + path);
  });
}

caspol_status caspol_material_optical_data(const char* path, int extrapolation,
                                           double wp_ev, double gamma_ev,
                                           caspol_material** out) {
  if (auto st = require(path && out, "material_optical_data: NULL argument"))
    return st;
  return guarded([&] {
    caspol::OpticalDataTable t = caspol::load_optical_data_file(path);
    using E = caspol::OpticalDataTable::Extrapolation;
    switch (extrapolation) {
      case 0: t.extrapolation = E::None; break;
      case 1: t.extrapolation = E::Drude; break;
      case 2: t.extrapolation = E::Plasma; break;
      default:
        caspol::fail(caspol::ErrorCode::InvalidArgument,
                     "extrapolation must be 0 (none), 1 (Drude) or 2 (plasma)");
    }
    t.plasma_frequency_ev = wp_ev;
    t.relaxation_ev = gamma_ev;
    *out = new caspol_material{
        caspol::PermittivityModel::from_optical_data(std::move(t))};
  });
}

void caspol_material_free(caspol_material* material) { delete material; }

caspol_status caspol_material_permittivity(const caspol_material* material,
                                           double xi_ev, double* out) {
  if (auto st = require(material && out, "material_permittivity: NULL argument"))
    return st;
  return guarded([&] { *out = material->model.at(xi_ev); });
}

caspol_status caspol_material_static_permittivity(
    const caspol_material* material, double* out_eps0, int* out_is_infinite) {
  if (auto st = require(material && out_eps0 && out_is_infinite,
                        "material_static_permittivity: NULL argument"))
    return st;
  return guarded([&] {
    const auto eps0 = material->model.static_limit();
    *out_is_infinite = eps0 ? 0 : 1;
    *out_eps0 = eps0.value_or(0.0);
  });
}

caspol_status caspol_compute(const caspol_material* plate, int graphene_coated,
                             const caspol_atom* atom, double separation_m,
                             double temperature_k, caspol_quantity quantity,
                             const caspol_settings* settings,
                             const caspol_constants* constants,
                             caspol_result* out) {
  if (auto st = require(plate && atom && out, "compute: NULL argument"))
    return st;
  return guarded([&] {
    const caspol::Constants k = to_constants(constants);
    const caspol::ComputeSettings cs = to_settings(settings);
    const caspol::Geometry g(separation_m * caspol::nm_per_m, temperature_k);
    const caspol::Surface s = make_surface(plate, graphene_coated, k);
    const caspol::CPResult r = run_quantity(s, atom->model, g, quantity, cs, k);
    out->value_si = r.value_si;
    out->value_dimensionless = r.dimensionless_value;
    out->terms_used = r.terms_used;
    out->est_error = r.est_error;
  });
}

caspol_status caspol_ratio_sweep(const caspol_material* plate,
                                 const caspol_atom* atom,
                                 const double* separations_m, size_t count,
                                 double temperature_k, caspol_quantity quantity,
                                 int keep_going,
                                 const caspol_settings* settings,
                                 const caspol_constants* constants,
                                 double* ratios_out,
                                 caspol_status* point_status) {
  if (auto st = require(plate && atom && separations_m && ratios_out && count > 0,
                        "ratio_sweep: NULL argument or empty grid"))
    return st;
  return guarded([&] {
    const caspol::Constants k = to_constants(constants);
    const caspol::ComputeSettings cs = to_settings(settings);
    const caspol::Surface coated = make_surface(plate, 1, k);
    const caspol::Surface bare = make_surface(plate, 0, k);
    std::vector<double> seps(count);
    for (size_t i = 0; i < count; ++i)
      seps[i] = separations_m[i] * caspol::nm_per_m;

    caspol::RatioKind kind = caspol::RatioKind::FreeEnergy;
    if (quantity == CASPOL_FORCE) kind = caspol::RatioKind::Force;
    if (quantity == CASPOL_ENERGY_T0) kind = caspol::RatioKind::EnergyT0;

    const auto points =
        caspol::ratio_sweep(coated, bare, atom->model, seps, temperature_k,
                            kind, cs, k);
    caspol_status first_failure = CASPOL_OK;
    std::string first_message;
    for (size_t i = 0; i < count; ++i) {
      ratios_out[i] = points[i].ok ? points[i].ratio : std::nan("");
      const caspol_status ps =
          points[i].ok ? CASPOL_OK : CASPOL_ERR_NO_CONVERGENCE;
      if (point_status) point_status[i] = ps;
      if (ps != CASPOL_OK && first_failure == CASPOL_OK) {
        first_failure = ps;
        first_message = points[i].message;
      }
    }
    if (first_failure != CASPOL_OK && !keep_going)
      caspol::fail(caspol::ErrorCode::NoConvergence, first_message);
  });
}

caspol_status caspol_classical(const caspol_material* plate,
                               int graphene_coated, const caspol_atom* atom,
                               double separation_m, double temperature_k,
                               caspol_quantity quantity,
                               const caspol_constants* constants,
                               caspol_classical_expansion* out) {
  if (auto st = require(plate && atom && out, "classical: NULL argument"))
    return st;
  return guarded([&] {
    const caspol::Constants k = to_constants(constants);
    const caspol::Geometry g(separation_m * caspol::nm_per_m, temperature_k);
    const auto eps0 = plate->model.static_limit();
    const caspol::GrapheneSheet sheet{k.fermi_velocity_ratio, true};
    caspol::ClassicalExpansion e;
    if (quantity == CASPOL_FREE_ENERGY) {
      if (graphene_coated) {
        e = caspol::classical_free_energy_coated(atom->model, g, eps0, sheet, k);
      } else {
        e.leading = caspol::classical_free_energy_bare(atom->model, g, eps0, k);
        e.total = e.leading;
      }
    } else if (quantity == CASPOL_FORCE) {
      if (graphene_coated) {
        e = caspol::classical_force_coated(atom->model, g, eps0, sheet, k);
      } else {
        e.leading = caspol::classical_force_bare(atom->model, g, eps0, k);
        e.total = e.leading;
      }
    } else {
      caspol::fail(caspol::ErrorCode::InvalidArgument,
                   "classical limit is defined for free energy and force");
    }
    out->leading = e.leading;
    out->first_correction = e.first_correction;
    out->second_correction = e.second_correction;
    out->total = e.total;
  });
}

caspol_status caspol_crossover_separation(const caspol_material* plate,
                                          int graphene_coated,
                                          const caspol_atom* atom,
                                          double temperature_k, double rel_tol,
                                          caspol_quantity quantity,
                                          const caspol_settings* settings,
                                          const caspol_constants* constants,
                                          double* separation_m_out) {
  if (auto st = require(plate && atom && separation_m_out,
                        "crossover_separation: NULL argument"))
    return st;
  return guarded([&] {
    if (quantity != CASPOL_FREE_ENERGY && quantity != CASPOL_FORCE)
      caspol::fail(caspol::ErrorCode::InvalidArgument,
                   "crossover is defined for free energy and force");
    const caspol::Constants k = to_constants(constants);
    const caspol::ComputeSettings cs = to_settings(settings);
    const caspol::Surface s = make_surface(plate, graphene_coated, k);
    const caspol::Kind kind = quantity == CASPOL_FORCE
                                  ? caspol::Kind::Force
                                  : caspol::Kind::FreeEnergy;
    const double a_nm = caspol::crossover_separation_nm(
        s, atom->model, temperature_k, rel_tol, kind, cs, k);
    *separation_m_out = a_nm / caspol::nm_per_m;
  });
}

}  // extern "C"
