#include "materials.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "quadrature.hpp"

namespace caspol {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v))
    fail(ErrorCode::InvalidArgument, std::string(what) + " must be positive");
}

// Fritsch-Carlson monotone cubic tangents for data that is monotone
// non-increasing (or non-decreasing) on x.
std::vector<double> monotone_tangents(const std::vector<double>& x,
                                      const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> d(n, 0.0), delta(n - 1, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i)
    delta[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
  d[0] = delta[0];
  d[n - 1] = delta[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) {
      d[i] = 0.0;
    } else {
      const double w1 = 2.0 * (x[i + 1] - x[i]) + (x[i] - x[i - 1]);
      const double w2 = (x[i + 1] - x[i]) + 2.0 * (x[i] - x[i - 1]);
      d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (delta[i] == 0.0) {
      d[i] = d[i + 1] = 0.0;
    } else {
      const double a = d[i] / delta[i];
      const double b = d[i + 1] / delta[i];
      const double s = a * a + b * b;
      if (s > 9.0) {
        const double t = 3.0 / std::sqrt(s);
        d[i] = t * a * delta[i];
        d[i + 1] = t * b * delta[i];
      }
    }
  }
  return d;
}

double hermite_eval(const std::vector<double>& x, const std::vector<double>& y,
                    const std::vector<double>& d, double xv) {
  const auto it = std::upper_bound(x.begin(), x.end(), xv);
  std::size_t i = static_cast<std::size_t>(std::distance(x.begin(), it));
  if (i == 0) i = 1;
  if (i >= x.size()) i = x.size() - 1;
  const double h = x[i] - x[i - 1];
  const double t = (xv - x[i - 1]) / h;
  const double t2 = t * t, t3 = t2 * t;
  return y[i - 1] * (2 * t3 - 3 * t2 + 1) + h * d[i - 1] * (t3 - 2 * t2 + t) +
         y[i] * (-2 * t3 + 3 * t2) + h * d[i] * (t3 - t2);
}

// Drude-model Im eps(w) = wp^2 g / (w (w^2 + g^2)), used for the
// low-frequency extrapolation tail of optical data.
double drude_im_eps_kernel(double w, double wp, double g, double xi) {
  return wp * wp * g / ((w * w + g * g) * (w * w + xi * xi));
}

}  // namespace

void OpticalDataTable::validate() const {
  if (omega_ev.size() != im_eps.size())
    fail(ErrorCode::InvalidArgument, "optical data: column size mismatch");
  if (omega_ev.size() < 2)
    fail(ErrorCode::InvalidArgument, "optical data: need at least two rows");
  for (std::size_t i = 0; i < omega_ev.size(); ++i) {
    if (!(omega_ev[i] > 0.0) || !std::isfinite(omega_ev[i]))
      fail(ErrorCode::InvalidArgument, "optical data: frequencies must be > 0");
    if (i > 0 && !(omega_ev[i] > omega_ev[i - 1]))
      fail(ErrorCode::InvalidArgument,
           "optical data: frequency column must be strictly increasing");
    if (!(im_eps[i] >= 0.0) || !std::isfinite(im_eps[i]))
      fail(ErrorCode::InvalidArgument, "optical data: Im eps must be >= 0");
  }
  if (extrapolation != Extrapolation::None) {
    check_positive(plasma_frequency_ev, "optical data: plasma frequency");
    if (extrapolation == Extrapolation::Drude)
      check_positive(relaxation_ev, "optical data: relaxation");
  }
}

OpticalDataTable load_optical_data(std::istream& in,
                                   const std::string& origin) {
  OpticalDataTable t;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double w, e;
    if (!(ls >> w)) continue;  // blank/comment line
    if (!(ls >> e))
      fail(ErrorCode::Parse, origin + ":" + std::to_string(lineno) +
                                 ": expected two columns (omega_eV Im_eps)");
    t.omega_ev.push_back(w);
    t.im_eps.push_back(e);
  }
  t.validate();
  return t;
}

OpticalDataTable load_optical_data_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open optical data file '" + path + "'");
  return load_optical_data(in, path);
}

double kramers_kronig_imaginary(const OpticalDataTable& table, double xi_ev) {
  if (!(xi_ev >= 0.0))
    fail(ErrorCode::InvalidArgument, "kramers_kronig: xi must be >= 0");
  if (xi_ev == 0.0 && table.extrapolation != OpticalDataTable::Extrapolation::None)
    fail(ErrorCode::Domain, "kramers_kronig: metal extrapolation diverges at xi = 0");

  const auto& w = table.omega_ev;
  const auto& e = table.im_eps;
  const double xi2 = xi_ev * xi_ev;

  // Exact integral of w*(linear Im eps)/(w^2 + xi^2) over each table segment.
  double core = 0.0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    const double w1 = w[i], w2 = w[i + 1];
    const double a = (e[i + 1] - e[i]) / (w2 - w1);
    const double b = e[i] - a * w1;
    double seg;
    if (xi_ev > 0.0) {
      seg = a * ((w2 - w1) - xi_ev * (std::atan(w2 / xi_ev) - std::atan(w1 / xi_ev))) +
            0.5 * b * std::log((w2 * w2 + xi2) / (w1 * w1 + xi2));
    } else {
      seg = a * (w2 - w1) + b * std::log(w2 / w1);
    }
    core += seg;
  }

  double tail = 0.0;
  double plasma_term = 0.0;
  switch (table.extrapolation) {
    case OpticalDataTable::Extrapolation::None:
      break;
    case OpticalDataTable::Extrapolation::Drude: {
      const double wp = table.plasma_frequency_ev;
      const double g = table.relaxation_ev;
      auto f = [&](double x) { return drude_im_eps_kernel(x, wp, g, xi_ev); };
      const auto q = integrate_adaptive(f, 0.0, w.front(), 1e-10, 0.0);
      if (!q.converged)
        fail(ErrorCode::NoConvergence,
             "kramers_kronig: extrapolation tail did not reach tolerance "
             "(estimate " + std::to_string(q.value) + ", error " +
                 std::to_string(q.abs_error) + ")");
      tail = q.value;
      break;
    }
    case OpticalDataTable::Extrapolation::Plasma:
      // lossless plasma: Im eps is a zero-frequency delta contributing
      // wp^2/xi^2 to eps(i xi)
      plasma_term = table.plasma_frequency_ev * table.plasma_frequency_ev / xi2;
      break;
  }

  return 1.0 + (2.0 / std::numbers::pi) * (core + tail) + plasma_term;
}

PermittivityModel PermittivityModel::vacuum() {
  return PermittivityModel(Vacuum{}, "vacuum");
}

PermittivityModel PermittivityModel::perfect_conductor() {
  return PermittivityModel(PerfectConductor{}, "perfect conductor");
}

PermittivityModel PermittivityModel::drude(double wp_ev, double gamma_ev) {
  check_positive(wp_ev, "Drude plasma frequency");
  check_positive(gamma_ev, "Drude relaxation");
  std::ostringstream d;
  d << "drude wp=" << wp_ev << " gamma=" << gamma_ev;
  return PermittivityModel(DrudeMetal{wp_ev, gamma_ev}, d.str());
}

PermittivityModel PermittivityModel::plasma(double wp_ev) {
  check_positive(wp_ev, "plasma frequency");
  std::ostringstream d;
  d << "plasma wp=" << wp_ev;
  return PermittivityModel(PlasmaMetal{wp_ev}, d.str());
}

PermittivityModel PermittivityModel::oscillators(
    std::vector<LorentzOscillator> oscs) {
  if (oscs.empty())
    fail(ErrorCode::InvalidArgument, "oscillator model needs >= 1 oscillator");
  std::ostringstream d;
  d << "oscillators";
  for (const auto& o : oscs) {
    check_positive(o.strength, "oscillator strength");
    check_positive(o.resonance_ev, "oscillator resonance");
    if (!(o.damping_ev >= 0.0))
      fail(ErrorCode::InvalidArgument, "oscillator damping must be >= 0");
    d << " (" << o.strength << "," << o.resonance_ev << "," << o.damping_ev
      << ")";
  }
  return PermittivityModel(OscillatorDielectric{std::move(oscs)}, d.str());
}

PermittivityModel PermittivityModel::tabulated(
    const std::vector<std::pair<double, double>>& grid) {
  if (grid.size() < 2)
    fail(ErrorCode::InvalidArgument, "tabulated eps: need at least two rows");
  TabulatedImaginary t;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto [xi, eps] = grid[i];
    if (!(xi > 0.0))
      fail(ErrorCode::InvalidArgument, "tabulated eps: xi must be > 0");
    if (!(eps >= 1.0))
      fail(ErrorCode::InvalidArgument, "tabulated eps: values must be >= 1");
    if (i > 0) {
      if (!(xi > grid[i - 1].first))
        fail(ErrorCode::InvalidArgument,
             "tabulated eps: xi must be strictly increasing");
      if (eps > grid[i - 1].second)
        fail(ErrorCode::InvalidArgument,
             "tabulated eps: values must be non-increasing in xi");
    }
    t.log_xi.push_back(std::log(xi));
    t.eps.push_back(eps);
  }
  t.slope = monotone_tangents(t.log_xi, t.eps);
  return PermittivityModel(std::move(t), "tabulated eps(i xi)");
}

PermittivityModel PermittivityModel::from_optical_data(OpticalDataTable table) {
  table.validate();
  return PermittivityModel(KramersKronig{std::move(table)},
                           "Kramers-Kronig optical data");
}

double PermittivityModel::at(double xi_ev) const {
  if (!(xi_ev >= 0.0))
    fail(ErrorCode::InvalidArgument, "permittivity: xi must be >= 0");
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Vacuum>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, PerfectConductor>) {
          return kInf;
        } else if constexpr (std::is_same_v<T, DrudeMetal>) {
          if (xi_ev == 0.0)
            fail(ErrorCode::Domain,
                 "Drude permittivity diverges at xi = 0; use the "
                 "zero-frequency reflection branch");
          return 1.0 + m.plasma_frequency_ev * m.plasma_frequency_ev /
                           (xi_ev * (xi_ev + m.relaxation_ev));
        } else if constexpr (std::is_same_v<T, PlasmaMetal>) {
          if (xi_ev == 0.0)
            fail(ErrorCode::Domain,
                 "plasma permittivity diverges at xi = 0; use the "
                 "zero-frequency reflection branch");
          return 1.0 +
                 m.plasma_frequency_ev * m.plasma_frequency_ev / (xi_ev * xi_ev);
        } else if constexpr (std::is_same_v<T, OscillatorDielectric>) {
          double eps = 1.0;
          for (const auto& o : m.oscillators) {
            const double w2 = o.resonance_ev * o.resonance_ev;
            eps += o.strength /
                   (1.0 + xi_ev * xi_ev / w2 + o.damping_ev * xi_ev / w2);
          }
          return eps;
        } else if constexpr (std::is_same_v<T, TabulatedImaginary>) {
          if (xi_ev == 0.0) return m.eps.front();
          const double lx = std::log(xi_ev);
          if (lx < m.log_xi.front() || lx > m.log_xi.back())
            fail(ErrorCode::Domain,
                 "tabulated eps: xi outside the tabulated range and no "
                 "extrapolation rule is defined");
          return hermite_eval(m.log_xi, m.eps, m.slope, lx);
        } else {
          static_assert(std::is_same_v<T, KramersKronig>);
          return kramers_kronig_imaginary(m.table, xi_ev);
        }
      },
      variant_);
}

std::optional<double> PermittivityModel::static_limit() const {
  return std::visit(
      [&](const auto& m) -> std::optional<double> {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Vacuum>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, PerfectConductor> ||
                             std::is_same_v<T, DrudeMetal> ||
                             std::is_same_v<T, PlasmaMetal>) {
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, OscillatorDielectric>) {
          double eps = 1.0;
          for (const auto& o : m.oscillators) eps += o.strength;
          return eps;
        } else if constexpr (std::is_same_v<T, TabulatedImaginary>) {
          return m.eps.front();
        } else {
          static_assert(std::is_same_v<T, KramersKronig>);
          if (m.table.extrapolation != OpticalDataTable::Extrapolation::None)
            return std::nullopt;
          return kramers_kronig_imaginary(m.table, 0.0);
        }
      },
      variant_);
}

namespace {

std::vector<std::pair<std::string, PermittivityModel>> make_builtins() {
  std::vector<std::pair<std::string, PermittivityModel>> v;
  v.emplace_back("Au", PermittivityModel::drude(9.0, 0.035));
  v.emplace_back("Au-plasma", PermittivityModel::plasma(9.0));
  v.emplace_back("Si",
                 PermittivityModel::oscillators({{10.7, 4.34, 0.0}}));
  v.emplace_back("Al2O3", PermittivityModel::oscillators(
                              {{7.03, 0.0658, 0.0}, {2.072, 13.164, 0.0}}));
  v.emplace_back("SiO2", PermittivityModel::oscillators(
                             {{1.703, 0.1237, 0.0}, {1.098, 13.36, 0.0}}));
  v.emplace_back("PEC", PermittivityModel::perfect_conductor());
  v.emplace_back("vacuum", PermittivityModel::vacuum());
  return v;
}

std::string canonical_material_name(std::string_view name) {
  std::string s(name);
  if (s == "gold") return "Au";
  if (s == "sapphire") return "Al2O3";
  if (s == "silica" || s == "fused-silica") return "SiO2";
  if (s == "silicon") return "Si";
  if (s == "perfect-conductor") return "PEC";
  return s;
}

}  // namespace

const PermittivityModel& builtin_material(std::string_view name) {
  static const auto catalog = make_builtins();
  const std::string canon = canonical_material_name(name);
  for (const auto& [n, m] : catalog)
    if (n == canon) return m;
  std::string msg = "unknown material '" + std::string(name) + "'; available:";
  for (const auto& [n, m] : catalog) msg += " " + n;
  fail(ErrorCode::UnknownName, msg);
}

std::vector<std::string> builtin_material_names() {
  static const auto catalog = make_builtins();
  std::vector<std::string> names;
  names.reserve(catalog.size());
  for (const auto& [n, m] : catalog) names.push_back(n);
  return names;
}

namespace {

double parse_number(const std::string& tok, const std::string& where) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    fail(ErrorCode::Parse, where + ": expected a number, got '" + tok + "'");
  }
  if (pos != tok.size())
    fail(ErrorCode::Parse, where + ": trailing characters in number '" + tok + "'");
  return v;
}

// key=value parameter list, order-independent
double named_param(const std::vector<std::string>& toks, const std::string& key,
                   const std::string& where) {
  for (const auto& t : toks) {
    const auto eq = t.find('=');
    if (eq != std::string::npos && t.substr(0, eq) == key)
      return parse_number(t.substr(eq + 1), where);
  }
  fail(ErrorCode::Parse, where + ": missing parameter '" + key + "='");
}

}  // namespace

std::vector<std::pair<std::string, PermittivityModel>> load_materials_db(
    std::istream& in, const std::string& origin) {
  std::vector<std::pair<std::string, PermittivityModel>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string name, variant;
    if (!(ls >> name)) continue;
    const std::string where = origin + ":" + std::to_string(lineno);
    if (!(ls >> variant))
      fail(ErrorCode::Parse, where + ": record needs 'name variant [params]'");
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);

    if (variant == "drude") {
      out.emplace_back(name,
                       PermittivityModel::drude(named_param(toks, "wp", where),
                                                named_param(toks, "gamma", where)));
    } else if (variant == "plasma") {
      out.emplace_back(name,
                       PermittivityModel::plasma(named_param(toks, "wp", where)));
    } else if (variant == "oscillators") {
      // parameter list: (strength,resonance[,damping]) groups
      std::string blob;
      for (const auto& t : toks) blob += t;
      std::vector<LorentzOscillator> oscs;
      std::size_t pos = 0;
      while (pos < blob.size()) {
        if (blob[pos] == ';') {
          ++pos;
          continue;
        }
        if (blob[pos] != '(')
          fail(ErrorCode::Parse, where + ": expected '(' in oscillator list");
        const auto close = blob.find(')', pos);
        if (close == std::string::npos)
          fail(ErrorCode::Parse, where + ": unterminated oscillator group");
        std::istringstream gs(blob.substr(pos + 1, close - pos - 1));
        LorentzOscillator o;
        char comma = 0;
        if (!(gs >> o.strength >> comma >> o.resonance_ev) || comma != ',')
          fail(ErrorCode::Parse,
               where + ": oscillator group needs (strength,resonance[,damping])");
        if (gs >> comma) {
          if (comma != ',' || !(gs >> o.damping_ev))
            fail(ErrorCode::Parse, where + ": bad oscillator damping field");
        }
        oscs.push_back(o);
        pos = close + 1;
      }
      out.emplace_back(name, PermittivityModel::oscillators(std::move(oscs)));
    } else if (variant == "perfect-conductor") {
      out.emplace_back(name, PermittivityModel::perfect_conductor());
    } else if (variant == "vacuum") {
      out.emplace_back(name, PermittivityModel::vacuum());
    } else {
      fail(ErrorCode::Parse, where + ": unknown variant '" + variant +
                                 "' (drude|plasma|oscillators|perfect-conductor|vacuum)");
    }
  }
  return out;
}

std::vector<std::pair<std::string, PermittivityModel>> load_materials_db_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open materials database '" + path + "'");
  return load_materials_db(in, path);
}

}  // namespace caspol
