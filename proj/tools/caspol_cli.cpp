// caspol command-line front end.  Talks to the shared library exclusively
// through the public C API (caspol.h); all heavy lifting happens there.
//
// Subcommands: compute, ratio, classical, crossover, figures.
// Exit codes: 0 success, 1 config error, 2 data error, 3 non-convergence.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "caspol.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

struct CliError {
  int exit_code;
  std::string message;
};

[[noreturn]] void die(int code, const std::string& msg) {
  throw CliError{code, msg};
}

int exit_code_for(caspol_status st, bool data_context = false) {
  switch (st) {
    case CASPOL_OK: return kExitOk;
    case CASPOL_ERR_INVALID_ARGUMENT:
    case CASPOL_ERR_UNKNOWN_NAME: return data_context ? kExitData : kExitConfig;
    case CASPOL_ERR_PARSE:
    case CASPOL_ERR_IO: return kExitData;
    case CASPOL_ERR_DOMAIN: return kExitConfig;
    case CASPOL_ERR_NO_CONVERGENCE: return kExitNumerical;
    default: return kExitNumerical;
  }
}

void check(caspol_status st, const std::string& what, bool data_context = false) {
  if (st == CASPOL_OK) return;
  die(exit_code_for(st, data_context), what + ": " + caspol_last_error());
}

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---- config file ----------------------------------------------------------

// Flat key=value text; '#' starts a comment.  Command-line flags override
// file values.
std::map<std::string, std::string> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) die(kExitConfig, "cannot open config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      die(kExitConfig, path + ":" + std::to_string(lineno) +
                           ": expected 'key = value', got '" + t + "'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      die(kExitConfig, path + ":" + std::to_string(lineno) + ": empty key");
    kv[key] = value;
  }
  return kv;
}

// ---- value parsing ----------------------------------------------------------

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    die(kExitConfig, what + ": not a number: '" + s + "'");
  }
}

// Length with optional unit suffix (nm, um, mm, m); bare numbers are
// meters.  Returned in nm, the unit of the output grid.
double parse_length_nm(std::string s, const std::string& what) {
  double scale = 1e9;  // bare numbers are meters
  auto ends_with = [&](const char* suf) {
    const std::size_t n = std::strlen(suf);
    return s.size() > n && s.compare(s.size() - n, n, suf) == 0;
  };
  if (ends_with("nm")) {
    scale = 1.0;
    s.resize(s.size() - 2);
  } else if (ends_with("um")) {
    scale = 1e3;
    s.resize(s.size() - 2);
  } else if (ends_with("mm")) {
    scale = 1e6;
    s.resize(s.size() - 2);
  } else if (ends_with("m")) {
    s.resize(s.size() - 1);
  }
  const double v = parse_double(s, what) * scale;
  if (!(v > 0.0)) die(kExitConfig, what + ": separation must be positive");
  return v;
}

bool parse_bool(const std::string& s, const std::string& what) {
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  die(kExitConfig, what + ": expected a boolean, got '" + s + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

// ---- run configuration ------------------------------------------------------

struct Options {
  std::optional<std::string> atom, material, quantity, ratio_kind, out, format,
      a_list, a_start, a_stop, a_scale, materials_db, outdir;
  std::optional<long> a_count, max_terms;
  std::optional<double> temperature, tol_quad, tol_sum, tol_zero_t, rel_tol;
  std::optional<int> threads, points;
  std::optional<bool> coated, keep_going;  // filled from flags after parsing
};

struct Resolved {
  std::string atom = "Rb";
  std::string material = "Au";
  std::string quantity;  // resolved per subcommand
  std::string ratio_kind = "free-energy";
  std::string out = "-";
  std::string format = "csv";
  std::string outdir = ".";
  std::string materials_db;
  std::vector<double> separations_nm;
  double temperature = 300.0;
  double rel_tol = 0.02;
  bool coated = false;
  bool keep_going = false;
  int points = 0;  // 0 = per-figure default
  caspol_settings settings{};
  caspol_constants constants{};
  std::map<std::string, std::pair<double, double>> atom_defs;  // name -> (a0, w0)
};

template <class T, class Parse>
void overlay(std::optional<T>& slot, const std::map<std::string, std::string>& cfg,
             const std::string& key, Parse parse) {
  if (slot.has_value()) return;  // command line takes precedence
  const auto it = cfg.find(key);
  if (it != cfg.end()) slot = parse(it->second, key);
}

Resolved resolve(Options& o, const std::map<std::string, std::string>& cfg,
                 const std::string& default_quantity) {
  auto id = [](const std::string& v, const std::string&) { return v; };
  auto num = [](const std::string& v, const std::string& k) {
    return parse_double(v, k);
  };
  auto lng = [](const std::string& v, const std::string& k) {
    return static_cast<long>(parse_double(v, k));
  };
  auto itg = [](const std::string& v, const std::string& k) {
    return static_cast<int>(parse_double(v, k));
  };
  auto bl = [](const std::string& v, const std::string& k) {
    return parse_bool(v, k);
  };
  overlay(o.atom, cfg, "atom", id);
  overlay(o.material, cfg, "material", id);
  overlay(o.quantity, cfg, "quantity", id);
  overlay(o.ratio_kind, cfg, "ratio_kind", id);
  overlay(o.out, cfg, "out", id);
  overlay(o.format, cfg, "format", id);
  overlay(o.outdir, cfg, "outdir", id);
  overlay(o.a_list, cfg, "a_list", id);
  overlay(o.a_start, cfg, "a_start", id);
  overlay(o.a_stop, cfg, "a_stop", id);
  overlay(o.a_scale, cfg, "a_scale", id);
  overlay(o.materials_db, cfg, "materials_db", id);
  overlay(o.a_count, cfg, "a_count", lng);
  overlay(o.max_terms, cfg, "max_terms", lng);
  overlay(o.temperature, cfg, "temperature", num);
  overlay(o.tol_quad, cfg, "tol_quad", num);
  overlay(o.tol_sum, cfg, "tol_sum", num);
  overlay(o.tol_zero_t, cfg, "tol_zero_t", num);
  overlay(o.rel_tol, cfg, "rel_tol", num);
  overlay(o.threads, cfg, "threads", itg);
  overlay(o.points, cfg, "points", itg);
  overlay(o.coated, cfg, "coated", bl);
  overlay(o.keep_going, cfg, "keep_going", bl);

  Resolved r;
  caspol_settings_default(&r.settings);
  caspol_constants_default(&r.constants);
  // constants override, for reproducibility experiments (config file only)
  auto const_key = [&](const char* key, double& slot) {
    const auto it = cfg.find(std::string("const.") + key);
    if (it != cfg.end()) slot = parse_double(it->second, key);
  };
  const_key("hbar_c_eV_nm", r.constants.hbar_c_ev_nm);
  const_key("k_B_eV_per_K", r.constants.boltzmann_ev_per_k);
  const_key("fine_structure", r.constants.fine_structure);
  const_key("fermi_velocity_ratio", r.constants.fermi_velocity_ratio);
  const_key("polarizability_au_m3", r.constants.polarizability_au_m3);
  if (o.atom) r.atom = *o.atom;
  if (o.material) r.material = *o.material;
  r.quantity = o.quantity.value_or(default_quantity);
  if (o.ratio_kind) r.ratio_kind = *o.ratio_kind;
  if (o.out) r.out = *o.out;
  if (o.format) r.format = *o.format;
  if (o.outdir) r.outdir = *o.outdir;
  if (o.materials_db) r.materials_db = *o.materials_db;
  if (o.temperature) r.temperature = *o.temperature;
  if (o.rel_tol) r.rel_tol = *o.rel_tol;
  if (o.coated) r.coated = *o.coated;
  if (o.keep_going) r.keep_going = *o.keep_going;
  if (o.points) r.points = *o.points;
  if (o.tol_quad) r.settings.quad_rel_tol = *o.tol_quad;
  if (o.tol_sum) r.settings.sum_rel_tol = *o.tol_sum;
  if (o.tol_zero_t) r.settings.zero_t_freq_tol = *o.tol_zero_t;
  if (o.max_terms) r.settings.max_matsubara_terms = *o.max_terms;
  if (o.threads) r.settings.threads = *o.threads;

  if (r.format != "csv" && r.format != "json")
    die(kExitConfig, "format must be csv or json, got '" + r.format + "'");
  if (!(r.temperature >= 0.0))
    die(kExitConfig, "temperature must be >= 0");

  // separation grid
  if (o.a_list) {
    for (const auto& tok : split(*o.a_list, ','))
      if (!tok.empty())
        r.separations_nm.push_back(parse_length_nm(tok, "a_list"));
  } else if (o.a_start || o.a_stop) {
    if (!o.a_start || !o.a_stop)
      die(kExitConfig, "separation range needs both a_start and a_stop");
    const double a0 = parse_length_nm(*o.a_start, "a_start");
    const double a1 = parse_length_nm(*o.a_stop, "a_stop");
    const long n = o.a_count.value_or(1);
    if (n < 1) die(kExitConfig, "a_count must be >= 1");
    const std::string scale = o.a_scale.value_or("log");
    if (scale != "linear" && scale != "log")
      die(kExitConfig, "a_scale must be linear or log");
    if (n == 1) {
      r.separations_nm.push_back(a0);
    } else {
      for (long i = 0; i < n; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(n - 1);
        r.separations_nm.push_back(scale == "log"
                                       ? a0 * std::pow(a1 / a0, f)
                                       : a0 + (a1 - a0) * f);
      }
    }
  }

  // atom catalog extensions: atom_def.<NAME> = alpha0_au, omega0_ev
  for (const auto& [key, value] : cfg) {
    if (key.rfind("atom_def.", 0) != 0) continue;
    const std::string name = key.substr(9);
    const auto parts = split(value, ',');
    if (name.empty() || parts.size() != 2)
      die(kExitConfig, "bad atom definition '" + key +
                           "': expected 'atom_def.NAME = alpha0_au, omega0_ev'");
    r.atom_defs[name] = {parse_double(parts[0], key), parse_double(parts[1], key)};
  }
  return r;
}

// ---- handle construction ------------------------------------------------------

struct AtomHandle {
  caspol_atom* p = nullptr;
  ~AtomHandle() { caspol_atom_free(p); }
};

struct MaterialHandle {
  caspol_material* p = nullptr;
  ~MaterialHandle() { caspol_material_free(p); }
};

void make_atom(const Resolved& r, const std::string& spec, AtomHandle& h) {
  if (spec.rfind("custom:", 0) == 0) {
    const auto parts = split(spec.substr(7), ',');
    if (parts.size() != 2)
      die(kExitConfig, "inline atom needs 'custom:alpha0_au,omega0_ev'");
    check(caspol_atom_custom("custom", parse_double(parts[0], "atom alpha0"),
                             parse_double(parts[1], "atom omega0"), &h.p),
          "atom");
    return;
  }
  const auto it = r.atom_defs.find(spec);
  if (it != r.atom_defs.end()) {
    check(caspol_atom_custom(spec.c_str(), it->second.first, it->second.second,
                             &h.p),
          "atom");
    return;
  }
  check(caspol_atom_builtin(spec.c_str(), &h.p), "atom");
}

void make_material(const Resolved& r, const std::string& spec,
                   MaterialHandle& h) {
  auto named = [&](const std::string& params, const std::string& key,
                   const std::string& what) {
    for (const auto& tok : split(params, ',')) {
      const auto eq = tok.find('=');
      if (eq != std::string::npos && tok.substr(0, eq) == key)
        return parse_double(tok.substr(eq + 1), what);
    }
    die(kExitConfig, what + ": missing parameter '" + key + "='");
  };
  if (spec.rfind("drude:", 0) == 0) {
    const std::string p = spec.substr(6);
    check(caspol_material_drude(named(p, "wp", "drude"), named(p, "gamma", "drude"),
                                &h.p),
          "material");
  } else if (spec.rfind("plasma:", 0) == 0) {
    check(caspol_material_plasma(named(spec.substr(7), "wp", "plasma"), &h.p),
          "material");
  } else if (spec.rfind("osc:", 0) == 0) {
    // osc:(strength,resonance[,damping]);(...)
    std::vector<double> s, w, g;
    for (const auto& group : split(spec.substr(4), ';')) {
      if (group.size() < 2 || group.front() != '(' || group.back() != ')')
        die(kExitConfig, "oscillator groups look like (strength,resonance[,damping])");
      const auto f = split(group.substr(1, group.size() - 2), ',');
      if (f.size() != 2 && f.size() != 3)
        die(kExitConfig, "oscillator groups need 2 or 3 numbers");
      s.push_back(parse_double(f[0], "oscillator strength"));
      w.push_back(parse_double(f[1], "oscillator resonance"));
      g.push_back(f.size() == 3 ? parse_double(f[2], "oscillator damping") : 0.0);
    }
    check(caspol_material_oscillators(s.data(), w.data(), g.data(), s.size(), &h.p),
          "material");
  } else if (spec == "pec" || spec == "perfect-conductor") {
    check(caspol_material_perfect_conductor(&h.p), "material");
  } else if (spec == "vacuum") {
    check(caspol_material_vacuum(&h.p), "material");
  } else if (spec.rfind("optical:", 0) == 0) {
    const auto parts = split(spec.substr(8), ',');
    int extrap = 0;
    double wp = 0.0, gamma = 0.0;
    if (parts.empty() || parts[0].empty())
      die(kExitConfig, "optical data spec needs a file path");
    if (parts.size() >= 2) {
      if (parts[1] == "drude" && parts.size() == 4) {
        extrap = 1;
        wp = parse_double(parts[2], "optical wp");
        gamma = parse_double(parts[3], "optical gamma");
      } else if (parts[1] == "plasma" && parts.size() == 3) {
        extrap = 2;
        wp = parse_double(parts[2], "optical wp");
      } else {
        die(kExitConfig,
            "optical spec: optical:FILE[,drude,WP,GAMMA|,plasma,WP]");
      }
    }
    check(caspol_material_optical_data(parts[0].c_str(), extrap, wp, gamma, &h.p),
          "material", /*data_context=*/true);
  } else if (!r.materials_db.empty()) {
    // prefer the user's database, fall back to the built-ins
    const caspol_status st =
        caspol_material_from_db(r.materials_db.c_str(), spec.c_str(), &h.p);
    if (st == CASPOL_ERR_UNKNOWN_NAME) {
      check(caspol_material_builtin(spec.c_str(), &h.p), "material");
    } else {
      check(st, "material", /*data_context=*/true);
    }
  } else {
    check(caspol_material_builtin(spec.c_str(), &h.p), "material");
  }
}

// ---- output writers -----------------------------------------------------------

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> row_status;  // optional, parallel to rows
};

std::vector<std::pair<std::string, std::string>> meta_lines(
    const Resolved& r, const std::string& command) {
  const caspol_constants& k = r.constants;
  std::vector<std::pair<std::string, std::string>> m;
  m.emplace_back("caspol_version", caspol_version());
  m.emplace_back("command", command);
  m.emplace_back("atom", r.atom);
  m.emplace_back("material", r.material);
  m.emplace_back("coated", r.coated ? "true" : "false");
  m.emplace_back("temperature_K", format_g17(r.temperature));
  m.emplace_back("quantity", r.quantity);
  m.emplace_back("tol_quad", format_g17(r.settings.quad_rel_tol));
  m.emplace_back("tol_sum", format_g17(r.settings.sum_rel_tol));
  m.emplace_back("constants.hbar_c_eV_nm", format_g17(k.hbar_c_ev_nm));
  m.emplace_back("constants.k_B_eV_per_K", format_g17(k.boltzmann_ev_per_k));
  m.emplace_back("constants.fine_structure", format_g17(k.fine_structure));
  m.emplace_back("constants.fermi_velocity_ratio",
                 format_g17(k.fermi_velocity_ratio));
  m.emplace_back("constants.polarizability_au_m3",
                 format_g17(k.polarizability_au_m3));
  return m;
}

void write_table(const Resolved& r, const std::string& command,
                 const Table& table, std::ostream& os) {
  const bool with_status = !table.row_status.empty();
  if (r.format == "csv") {
    for (const auto& [k, v] : meta_lines(r, command))
      os << "# " << k << " = " << v << "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c)
      os << table.columns[c] << (c + 1 < table.columns.size() ? "," : "");
    if (with_status) os << ",status";
    os << "\n";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      const auto& row = table.rows[i];
      for (std::size_t c = 0; c < row.size(); ++c)
        os << format_g17(row[c]) << (c + 1 < row.size() ? "," : "");
      if (with_status) os << "," << table.row_status[i];
      os << "\n";
    }
  } else {
    nlohmann::ordered_json doc;
    for (const auto& [k, v] : meta_lines(r, command)) doc["meta"][k] = v;
    doc["columns"] = table.columns;
    doc["rows"] = nlohmann::json::array();
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      nlohmann::ordered_json row;
      for (std::size_t c = 0; c < table.rows[i].size(); ++c) {
        const double v = table.rows[i][c];
        if (std::isnan(v))
          row[table.columns[c]] = nullptr;
        else
          row[table.columns[c]] = v;
      }
      if (with_status) row["status"] = table.row_status[i];
      doc["rows"].push_back(row);
    }
    os << doc.dump(2) << "\n";
  }
}

void emit(const Resolved& r, const std::string& command, const Table& table) {
  if (r.out == "-") {
    write_table(r, command, table, std::cout);
    return;
  }
  std::ofstream os(r.out, std::ios::binary);
  if (!os) die(kExitData, "cannot open output file '" + r.out + "'");
  write_table(r, command, table, os);
}

// ---- subcommand bodies ----------------------------------------------------------

caspol_quantity quantity_from(const std::string& q) {
  if (q == "free-energy") return CASPOL_FREE_ENERGY;
  if (q == "force") return CASPOL_FORCE;
  if (q == "energy-T0") return CASPOL_ENERGY_T0;
  die(kExitConfig, "quantity must be free-energy, force or energy-T0, got '" + q + "'");
}

void require_grid(const Resolved& r) {
  if (r.separations_nm.empty())
    die(kExitConfig,
        "no separations given; use --a-list or --a-start/--a-stop/--a-count");
}

int run_compute(const Resolved& r) {
  require_grid(r);
  const caspol_quantity q = quantity_from(r.quantity);
  if (q != CASPOL_ENERGY_T0 && !(r.temperature > 0.0))
    die(kExitConfig, "temperature 0 is only valid with quantity=energy-T0");
  AtomHandle atom;
  MaterialHandle mat;
  make_atom(r, r.atom, atom);
  make_material(r, r.material, mat);

  Table t;
  t.columns = {"a_nm", "value_SI", "value_dimensionless", "terms_used",
               "est_error"};
  bool any_failed = false;
  for (const double a_nm : r.separations_nm) {
    caspol_result res{};
    const caspol_status st =
        caspol_compute(mat.p, r.coated ? 1 : 0, atom.p, a_nm * 1e-9,
                       r.temperature, q, &r.settings, &r.constants, &res);
    if (st != CASPOL_OK && !r.keep_going)
      die(exit_code_for(st), std::string("compute: ") + caspol_last_error());
    const bool ok = st == CASPOL_OK;
    any_failed = any_failed || !ok;
    t.rows.push_back({a_nm, ok ? res.value_si : std::nan(""),
                      ok ? res.value_dimensionless : std::nan(""),
                      ok ? static_cast<double>(res.terms_used) : std::nan(""),
                      ok ? res.est_error : std::nan("")});
    if (r.keep_going) t.row_status.push_back(ok ? "ok" : "failed");
  }
  emit(r, "compute", t);
  return any_failed ? kExitNumerical : kExitOk;
}

int run_ratio(Resolved r) {
  require_grid(r);
  const caspol_quantity q = quantity_from(r.ratio_kind);
  r.quantity = "ratio:" + r.ratio_kind;
  AtomHandle atom;
  MaterialHandle mat;
  make_atom(r, r.atom, atom);
  make_material(r, r.material, mat);

  std::vector<double> seps_m(r.separations_nm.size());
  for (std::size_t i = 0; i < seps_m.size(); ++i)
    seps_m[i] = r.separations_nm[i] * 1e-9;
  std::vector<double> ratios(seps_m.size());
  std::vector<caspol_status> status(seps_m.size());
  const caspol_status st = caspol_ratio_sweep(
      mat.p, atom.p, seps_m.data(), seps_m.size(), r.temperature, q,
      r.keep_going ? 1 : 0, &r.settings, &r.constants, ratios.data(),
      status.data());
  if (st != CASPOL_OK)
    die(exit_code_for(st), std::string("ratio: ") + caspol_last_error());

  Table t;
  t.columns = {"a_nm", "ratio_coated_over_bare"};
  bool any_failed = false;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    const bool ok = status[i] == CASPOL_OK;
    any_failed = any_failed || !ok;
    t.rows.push_back({r.separations_nm[i], ratios[i]});
    if (r.keep_going) t.row_status.push_back(ok ? "ok" : "failed");
  }
  emit(r, "ratio", t);
  return any_failed ? kExitNumerical : kExitOk;
}

int run_classical(const Resolved& r) {
  require_grid(r);
  const caspol_quantity q = quantity_from(r.quantity);
  if (q == CASPOL_ENERGY_T0)
    die(kExitConfig, "classical limit is defined for free-energy and force");
  AtomHandle atom;
  MaterialHandle mat;
  make_atom(r, r.atom, atom);
  make_material(r, r.material, mat);

  Table t;
  t.columns = {"a_nm", "leading_SI", "first_correction_SI",
               "second_correction_SI", "total_SI"};
  for (const double a_nm : r.separations_nm) {
    caspol_classical_expansion e{};
    check(caspol_classical(mat.p, r.coated ? 1 : 0, atom.p, a_nm * 1e-9,
                           r.temperature, q, &r.constants, &e),
          "classical");
    t.rows.push_back({a_nm, e.leading, e.first_correction, e.second_correction,
                      e.total});
  }
  emit(r, "classical", t);
  return kExitOk;
}

int run_crossover(const Resolved& r) {
  const caspol_quantity q = quantity_from(r.quantity);
  if (q == CASPOL_ENERGY_T0)
    die(kExitConfig, "crossover is defined for free-energy and force");
  AtomHandle atom;
  MaterialHandle mat;
  make_atom(r, r.atom, atom);
  make_material(r, r.material, mat);

  double a_m = 0.0;
  check(caspol_crossover_separation(mat.p, r.coated ? 1 : 0, atom.p,
                                    r.temperature, r.rel_tol, q, &r.settings,
                                    &r.constants, &a_m),
        "crossover");
  Table t;
  t.columns = {"rel_tol", "crossover_nm"};
  t.rows.push_back({r.rel_tol, a_m * 1e9});
  emit(r, "crossover", t);
  return kExitOk;
}

// Data files behind the published figures: ratio and force curves for the
// built-in atoms and plates at T = 300 K.
int run_figures(const Resolved& r) {
  const std::vector<std::string> plates = {"Au", "Si", "Al2O3", "SiO2"};
  const std::vector<std::string> atoms = {"Rb", "Na", "Cs", "He*"};
  const double T = r.temperature;

  auto grid = [&](double a0_nm, double a1_nm, int n) {
    if (r.points >= 2) n = r.points;
    std::vector<double> g(n);  // nm
    for (int i = 0; i < n; ++i)
      g[i] = a0_nm * std::pow(a1_nm / a0_nm, static_cast<double>(i) / (n - 1));
    return g;
  };

  auto ratio_curve = [&](const std::string& plate, const std::string& atom_name,
                         caspol_quantity q, const std::vector<double>& seps) {
    AtomHandle atom;
    MaterialHandle mat;
    make_atom(r, atom_name, atom);
    make_material(r, plate, mat);
    std::vector<double> seps_m(seps.size());
    for (std::size_t i = 0; i < seps.size(); ++i) seps_m[i] = seps[i] * 1e-9;
    std::vector<double> ratios(seps.size());
    check(caspol_ratio_sweep(mat.p, atom.p, seps_m.data(), seps_m.size(), T, q,
                             0, &r.settings, &r.constants, ratios.data(),
                             nullptr),
          "figures");
    return ratios;
  };

  auto value_curve = [&](const std::string& plate, const std::string& atom_name,
                         bool coated, caspol_quantity q,
                         const std::vector<double>& seps) {
    AtomHandle atom;
    MaterialHandle mat;
    make_atom(r, atom_name, atom);
    make_material(r, plate, mat);
    std::vector<double> vals(seps.size());
    for (std::size_t i = 0; i < seps.size(); ++i) {
      caspol_result res{};
      check(caspol_compute(mat.p, coated ? 1 : 0, atom.p, seps[i] * 1e-9, T, q,
                           &r.settings, &r.constants, &res),
            "figures");
      vals[i] = res.value_si;
    }
    return vals;
  };

  auto write_fig = [&](const std::string& name, const Table& t) {
    Resolved rf = r;
    rf.out = r.outdir + "/" + name;
    rf.quantity = "figures";
    rf.format = "csv";
    emit(rf, "figures", t);
    std::cerr << "wrote " << rf.out << "\n";
  };

  {  // fig1: free-energy ratios, Rb, four plates
    const auto seps = grid(100.0, 6000.0, 61);
    Table t;
    t.columns = {"a_nm", "Au", "Si", "Al2O3", "SiO2"};
    std::vector<std::vector<double>> curves;
    for (const auto& p : plates)
      curves.push_back(ratio_curve(p, "Rb", CASPOL_FREE_ENERGY, seps));
    for (std::size_t i = 0; i < seps.size(); ++i)
      t.rows.push_back(
          {seps[i], curves[0][i], curves[1][i], curves[2][i], curves[3][i]});
    write_fig("fig1.csv", t);
  }
  {  // fig2: panel (a) F(300K)/E(0K) bare and coated SiO2, Rb; panel (b)
     // coated/bare ratios at 300 K and 0 K.  Both panels derive from the
     // same four curves.
    const auto seps = grid(100.0, 6000.0, 25);
    Table t;
    t.columns = {"a_nm", "F300_over_E0_bare", "F300_over_E0_coated",
                 "ratio_T300K", "ratio_T0K"};
    const auto fb = value_curve("SiO2", "Rb", false, CASPOL_FREE_ENERGY, seps);
    const auto eb = value_curve("SiO2", "Rb", false, CASPOL_ENERGY_T0, seps);
    const auto fc = value_curve("SiO2", "Rb", true, CASPOL_FREE_ENERGY, seps);
    const auto ec = value_curve("SiO2", "Rb", true, CASPOL_ENERGY_T0, seps);
    for (std::size_t i = 0; i < seps.size(); ++i)
      t.rows.push_back({seps[i], fb[i] / eb[i], fc[i] / ec[i], fc[i] / fb[i],
                        ec[i] / eb[i]});
    write_fig("fig2.csv", t);
  }
  {  // fig3: free-energy ratios on SiO2 for the four atoms
    const auto seps = grid(100.0, 1000.0, 41);
    Table t;
    t.columns = {"a_nm", "Rb", "Na", "Cs", "He*"};
    std::vector<std::vector<double>> curves;
    for (const auto& a : atoms)
      curves.push_back(ratio_curve("SiO2", a, CASPOL_FREE_ENERGY, seps));
    for (std::size_t i = 0; i < seps.size(); ++i)
      t.rows.push_back(
          {seps[i], curves[0][i], curves[1][i], curves[2][i], curves[3][i]});
    write_fig("fig3.csv", t);
  }
  {  // fig4: force ratios, He*, four plates
    const auto seps = grid(100.0, 6000.0, 61);
    Table t;
    t.columns = {"a_nm", "Au", "Si", "Al2O3", "SiO2"};
    std::vector<std::vector<double>> curves;
    for (const auto& p : plates)
      curves.push_back(ratio_curve(p, "He*", CASPOL_FORCE, seps));
    for (std::size_t i = 0; i < seps.size(); ++i)
      t.rows.push_back(
          {seps[i], curves[0][i], curves[1][i], curves[2][i], curves[3][i]});
    write_fig("fig4.csv", t);
  }
  // fig5/fig6: |F| a^4 for coated and bare plates, He*
  for (const bool coated : {true, false}) {
    const auto seps = grid(500.0, 10000.0, 40);
    Table t;
    t.columns = {"a_nm", "Au", "Si", "Al2O3", "SiO2"};
    std::vector<std::vector<double>> curves;
    for (const auto& p : plates) {
      auto vals = value_curve(p, "He*", coated, CASPOL_FORCE, seps);
      for (std::size_t i = 0; i < seps.size(); ++i)
        vals[i] = std::fabs(vals[i]) * std::pow(seps[i] * 1e-9, 4);  // N m^4
      curves.push_back(std::move(vals));
    }
    for (std::size_t i = 0; i < seps.size(); ++i)
      t.rows.push_back(
          {seps[i], curves[0][i], curves[1][i], curves[2][i], curves[3][i]});
    write_fig(coated ? "fig5.csv" : "fig6.csv", t);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir-Polder free energies and forces for atoms near "
               "graphene-coated and uncoated plates"};
  app.require_subcommand(1);

  Options o;
  std::string config_path;
  bool flag_coated = false, flag_bare = false, flag_keep_going = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path,
                    "flat key=value config file (flags take precedence)");
    cmd->add_option("--atom", o.atom,
                    "atom name (Rb, Na, Cs, He*), config-defined name, or "
                    "custom:alpha0_au,omega0_ev");
    cmd->add_option("--material", o.material,
                    "material name (Au, Au-plasma, Si, Al2O3, SiO2, PEC, "
                    "vacuum), database name, or inline spec (drude:..., "
                    "plasma:..., osc:..., optical:..., pec, vacuum)");
    cmd->add_flag("--coated", flag_coated, "graphene coating on the plate");
    cmd->add_flag("--bare", flag_bare, "no graphene coating (default)");
    cmd->add_option("--temperature", o.temperature, "temperature in K");
    cmd->add_option("--a-list", o.a_list,
                    "comma-separated separations (suffix nm/um/m)");
    cmd->add_option("--a-start", o.a_start, "first separation");
    cmd->add_option("--a-stop", o.a_stop, "last separation");
    cmd->add_option("--a-count", o.a_count, "number of separations");
    cmd->add_option("--a-scale", o.a_scale, "grid scale: linear|log");
    cmd->add_option("--quantity", o.quantity,
                    "free-energy | force | energy-T0");
    cmd->add_option("--out", o.out, "output path ('-' = stdout)");
    cmd->add_option("--format", o.format, "csv | json");
    cmd->add_flag("--keep-going", flag_keep_going,
                  "report per-point failures in a status column");
    cmd->add_option("--tol-quad", o.tol_quad, "quadrature relative tolerance");
    cmd->add_option("--tol-sum", o.tol_sum, "Matsubara truncation tolerance");
    cmd->add_option("--tol-zero-t", o.tol_zero_t,
                    "zero-temperature frequency-integral tolerance");
    cmd->add_option("--max-terms", o.max_terms, "Matsubara term budget");
    cmd->add_option("--threads", o.threads, "sweep threads (0 = hardware)");
    cmd->add_option("--materials-db", o.materials_db,
                    "materials database file (extends the built-ins)");
  };

  CLI::App* compute = app.add_subcommand(
      "compute", "free energy, force or T=0 energy over a separation grid");
  add_common(compute);
  CLI::App* ratio = app.add_subcommand(
      "ratio", "coated/bare ratio of the chosen quantity per separation");
  add_common(ratio);
  ratio->add_option("--ratio-kind", o.ratio_kind,
                    "underlying quantity: free-energy | force | energy-T0");
  CLI::App* classical = app.add_subcommand(
      "classical", "closed-form high-temperature expansion per separation");
  add_common(classical);
  CLI::App* crossover = app.add_subcommand(
      "crossover",
      "smallest separation where the classical expression matches the engine");
  add_common(crossover);
  crossover->add_option("--rel-tol", o.rel_tol,
                        "agreement tolerance (default 0.02)");
  CLI::App* figures = app.add_subcommand(
      "figures", "emit fig1.csv..fig6.csv data files for the standard curves");
  add_common(figures);
  figures->add_option("--outdir", o.outdir, "output directory");
  figures->add_option("--points", o.points, "points per curve override");

  CLI11_PARSE(app, argc, argv);

  try {
    if (flag_bare) o.coated = false;
    else if (flag_coated) o.coated = true;
    if (flag_keep_going) o.keep_going = true;

    std::map<std::string, std::string> cfg;
    if (!config_path.empty()) cfg = load_config(config_path);

    if (app.got_subcommand(compute)) {
      Resolved r = resolve(o, cfg, "free-energy");
      // 'compute' doubles as the generic runner when the config selects a mode
      if (r.quantity == "ratio") return run_ratio(r);
      if (r.quantity == "classical") {
        r.quantity = "free-energy";
        return run_classical(r);
      }
      if (r.quantity == "crossover") {
        r.quantity = "force";
        return run_crossover(r);
      }
      return run_compute(r);
    }
    if (app.got_subcommand(ratio)) {
      Resolved r = resolve(o, cfg, "ratio");
      // --quantity names the underlying kind unless --ratio-kind is explicit
      if (!o.ratio_kind && r.quantity != "ratio") r.ratio_kind = r.quantity;
      return run_ratio(r);
    }
    if (app.got_subcommand(classical))
      return run_classical(resolve(o, cfg, "free-energy"));
    if (app.got_subcommand(crossover))
      return run_crossover(resolve(o, cfg, "force"));
    if (app.got_subcommand(figures)) return run_figures(resolve(o, cfg, "figures"));
    die(kExitConfig, "no subcommand given");
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
