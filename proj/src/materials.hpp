#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"

namespace caspol {

struct LorentzOscillator {
  double strength = 0.0;      // dimensionless
  double resonance_ev = 0.0;  // omega_j
  double damping_ev = 0.0;    // gamma_j
};

// Tabulated Im eps(omega) along the real axis, with a declared low-frequency
// extrapolation; eps(i xi) follows from the Kramers-Kronig transform.
struct OpticalDataTable {
  enum class Extrapolation { None, Drude, Plasma };

  std::vector<double> omega_ev;  // strictly increasing, > 0
  std::vector<double> im_eps;    // >= 0
  Extrapolation extrapolation = Extrapolation::None;
  double plasma_frequency_ev = 0.0;
  double relaxation_ev = 0.0;

  void validate() const;
};

OpticalDataTable load_optical_data(std::istream& in, const std::string& origin);
OpticalDataTable load_optical_data_file(const std::string& path);

// eps(i xi) = 1 + (2/pi) Int_0^inf  w Im eps(w) / (w^2 + xi^2) dw.
// The tabulated part is integrated segment-exactly (piecewise-linear Im eps);
// the declared extrapolation covers [0, w_min) and Im eps is zero above the
// grid.  A lossless plasma tail contributes wp^2/xi^2 directly.
double kramers_kronig_imaginary(const OpticalDataTable& table, double xi_ev);

// Plate permittivity at imaginary frequencies.
class PermittivityModel {
public:
  struct Vacuum {};
  struct PerfectConductor {};
  struct DrudeMetal {
    double plasma_frequency_ev;
    double relaxation_ev;
  };
  struct PlasmaMetal {
    double plasma_frequency_ev;
  };
  struct OscillatorDielectric {
    std::vector<LorentzOscillator> oscillators;
  };
  struct TabulatedImaginary {
    std::vector<double> log_xi;  // log(xi/eV), strictly increasing
    std::vector<double> eps;     // >= 1, non-increasing
    std::vector<double> slope;   // monotone cubic tangents
  };
  struct KramersKronig {
    OpticalDataTable table;
  };

  static PermittivityModel vacuum();
  static PermittivityModel perfect_conductor();
  static PermittivityModel drude(double wp_ev, double gamma_ev);
  static PermittivityModel plasma(double wp_ev);
  static PermittivityModel oscillators(std::vector<LorentzOscillator> oscs);
  // grid of (xi_ev, eps(i xi)); validated: xi increasing, eps >= 1 and
  // non-increasing
  static PermittivityModel tabulated(
      const std::vector<std::pair<double, double>>& grid);
  static PermittivityModel from_optical_data(OpticalDataTable table);

  double at(double xi_ev) const;
  // nullopt encodes an infinite static permittivity (metals, PEC)
  std::optional<double> static_limit() const;
  bool is_metal() const { return !static_limit().has_value(); }
  const std::string& description() const { return description_; }

private:
  using Variant = std::variant<Vacuum, PerfectConductor, DrudeMetal,
                               PlasmaMetal, OscillatorDielectric,
                               TabulatedImaginary, KramersKronig>;
  explicit PermittivityModel(Variant v, std::string description)
      : variant_(std::move(v)), description_(std::move(description)) {}

  Variant variant_;
  std::string description_;
};

inline double permittivity_at(const PermittivityModel& m, double xi_ev) {
  return m.at(xi_ev);
}
inline std::optional<double> static_permittivity(const PermittivityModel& m) {
  return m.static_limit();
}

// Built-in plates: Au (Drude), Au-plasma, Si, Al2O3, SiO2, PEC, vacuum.
const PermittivityModel& builtin_material(std::string_view name);
std::vector<std::string> builtin_material_names();

// Materials database: one record per line, "name variant params...".
// Grammar documented in docs/file-formats.md.
std::vector<std::pair<std::string, PermittivityModel>> load_materials_db(
    std::istream& in, const std::string& origin);
std::vector<std::pair<std::string, PermittivityModel>> load_materials_db_file(
    const std::string& path);

}  // namespace caspol
