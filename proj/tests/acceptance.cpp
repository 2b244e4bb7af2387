// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.  Tolerances are pinned in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "asymptotics.hpp"
#include "atoms.hpp"
#include "lifshitz.hpp"
#include "materials.hpp"
#include "quadrature.hpp"

using namespace caspol;

namespace {

int g_failures = 0;

void report(int id, bool ok, const std::string& desc,
            const std::string& detail) {
  std::printf("%s criterion %d: %s [%s]\n", ok ? "PASS" : "FAIL", id,
              desc.c_str(), detail.c_str());
  if (!ok) ++g_failures;
}

Surface bare(const char* name) {
  return Surface{builtin_material(name), std::nullopt};
}
Surface coated(const char* name) {
  return Surface{builtin_material(name), GrapheneSheet{}};
}

double ratio(RatioKind kind, const char* mat, const char* atom, double a_nm,
             double T = 300.0, const ComputeSettings& s = {}) {
  const auto pts = ratio_sweep(coated(mat), bare(mat), builtin_atom(atom),
                               {a_nm}, T, kind, s);
  if (!pts[0].ok) throw Error(ErrorCode::NoConvergence, pts[0].message);
  return pts[0].ratio;
}

struct RatioCase {
  double a_nm;
  const char* material;
  double expected;
};

// criterion 1: free-energy ratios, Rb, 300 K, +-0.02; table under 60 s
void criterion_1() {
  const RatioCase cases[] = {
      {100.0, "Si", 1.011},  {100.0, "Al2O3", 1.038},  {100.0, "SiO2", 1.10},
      {200.0, "Si", 1.015},  {200.0, "Al2O3", 1.043},  {200.0, "SiO2", 1.12},
      {6000.0, "Si", 1.19},  {6000.0, "Al2O3", 1.22},  {6000.0, "SiO2", 1.70},
  };
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::string worst_at;
  for (const auto& c : cases) {
    const double r = ratio(RatioKind::FreeEnergy, c.material, "Rb", c.a_nm);
    const double dev = std::fabs(r - c.expected);
    if (dev > worst) {
      worst = dev;
      std::ostringstream os;
      os << c.material << "@" << c.a_nm << "nm: " << r << " vs " << c.expected;
      worst_at = os.str();
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::ostringstream detail;
  detail << "max |dev| " << worst << " (" << worst_at << "), " << secs << " s";
  report(1, worst <= 0.02 && secs < 60.0,
         "free-energy ratio table (Rb, 300 K) within 0.02, under 60 s",
         detail.str());
}

// criterion 2: force ratios, He*, 300 K, +-0.02
void criterion_2() {
  const RatioCase cases[] = {
      {100.0, "Si", 1.014},  {100.0, "Al2O3", 1.051},  {100.0, "SiO2", 1.145},
      {200.0, "Si", 1.018},  {200.0, "Al2O3", 1.048},  {200.0, "SiO2", 1.140},
      {6000.0, "Si", 1.19},  {6000.0, "Al2O3", 1.22},  {6000.0, "SiO2", 1.70},
  };
  double worst = 0.0;
  std::string worst_at;
  for (const auto& c : cases) {
    const double r = ratio(RatioKind::Force, c.material, "He*", c.a_nm);
    const double dev = std::fabs(r - c.expected);
    if (dev > worst) {
      worst = dev;
      std::ostringstream os;
      os << c.material << "@" << c.a_nm << "nm: " << r << " vs " << c.expected;
      worst_at = os.str();
    }
  }
  std::ostringstream detail;
  detail << "max |dev| " << worst << " (" << worst_at << ")";
  report(2, worst <= 0.02, "force ratio table (He*, 300 K) within 0.02",
         detail.str());
}

// criterion 3: graphene has no effect on Au plates, |ratio - 1| <= 0.002
void criterion_3() {
  double worst = 0.0;
  std::string worst_at;
  for (const char* atom : {"Rb", "Na", "Cs", "He*"}) {
    for (const double a : {100.0, 1000.0, 6000.0}) {
      for (const RatioKind kind : {RatioKind::FreeEnergy, RatioKind::Force}) {
        const double dev = std::fabs(ratio(kind, "Au", atom, a) - 1.0);
        if (dev > worst) {
          worst = dev;
          std::ostringstream os;
          os << atom << "@" << a << "nm/"
             << (kind == RatioKind::Force ? "force" : "energy");
          worst_at = os.str();
        }
      }
    }
  }
  std::ostringstream detail;
  detail << "max |ratio-1| " << worst << " (" << worst_at << ")";
  report(3, worst <= 0.002, "metal null result for Au within 0.002",
         detail.str());
}

// criterion 4: zero-temperature ratios, Rb + SiO2
void criterion_4() {
  const double r100 = ratio(RatioKind::EnergyT0, "SiO2", "Rb", 100.0, 0.0);
  const double r6um = ratio(RatioKind::EnergyT0, "SiO2", "Rb", 6000.0, 0.0);
  std::ostringstream detail;
  detail << "100nm: " << r100 << " vs 1.07; 6um: " << r6um << " vs 1.03";
  report(4,
         std::fabs(r100 - 1.07) <= 0.02 && std::fabs(r6um - 1.03) <= 0.02,
         "zero-temperature ratios E_g/E (Rb + SiO2) within 0.02",
         detail.str());
}

// criterion 5: classical-limit crossovers at 2%, +-0.5 um
void criterion_5() {
  struct Case {
    const char* material;
    bool with_coating;
    double expected_um;
  };
  const Case cases[] = {{"SiO2", true, 5.0},
                        {"Al2O3", true, 5.5},
                        {"Si", true, 5.5},
                        {"Au", true, 6.0},
                        {"Au", false, 6.0}};
  bool ok = true;
  std::ostringstream detail;
  for (const auto& c : cases) {
    const Surface s = c.with_coating ? coated(c.material) : bare(c.material);
    const double a_um =
        crossover_separation_nm(s, builtin_atom("He*"), 300.0, 0.02) / 1000.0;
    const bool this_ok = std::fabs(a_um - c.expected_um) <= 0.5;
    ok = ok && this_ok;
    detail << c.material << (c.with_coating ? "+g" : "") << ": " << a_um
           << " um (exp " << c.expected_um << "); ";
  }
  report(5, ok, "classical crossovers within 0.5 um", detail.str());
}

// criterion 6: closed-form agreement at a = 8 um within 1%
void criterion_6() {
  const Geometry g(8000.0, 300.0);
  const AtomModel& he = builtin_atom("He*");
  double worst = 0.0;
  std::string worst_at;
  auto track = [&](const char* tag, double engine, double closed) {
    const double dev = std::fabs((engine - closed) / engine);
    if (dev > worst) {
      worst = dev;
      worst_at = tag;
    }
  };
  for (const char* mat : {"SiO2", "Al2O3", "Si"}) {
    const auto eps0 = builtin_material(mat).static_limit();
    track((std::string(mat) + "/force").c_str(),
          force(coated(mat), he, g).value_si,
          classical_force_coated(he, g, eps0).total);
    track((std::string(mat) + "/energy").c_str(),
          free_energy(coated(mat), he, g).value_si,
          classical_free_energy_coated(he, g, eps0).total);
  }
  track("Au/force", force(coated("Au"), he, g).value_si,
        classical_force_coated(he, g, std::nullopt).total);
  track("Au/energy", free_energy(coated("Au"), he, g).value_si,
        classical_free_energy_coated(he, g, std::nullopt).total);
  track("Au-bare/force", force(bare("Au"), he, g).value_si,
        classical_force_bare(he, g, std::nullopt));
  std::ostringstream detail;
  detail << "max rel dev " << worst << " (" << worst_at << ")";
  report(6, worst <= 0.01, "closed forms match the engine at 8 um within 1%",
         detail.str());
}

// criterion 7: property suite
void criterion_7() {
  bool ok = true;
  std::ostringstream detail;
  const Constants& kc = default_constants();
  GrapheneSheet sheet;

  {  // |R| <= 1 sampling over the physical domain
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    bool bounds = true;
    for (const char* name : {"Au", "Si", "SiO2"}) {
      const auto& plate = builtin_material(name);
      for (int i = 0; i < 400; ++i) {
        const double zeta = 25.0 * u(rng) + 1e-6;
        const double y = zeta * (1 + 1e-9) + 25.0 * u(rng);
        const double eps = plate.at(zeta);
        for (const bool c : {false, true}) {
          const TensorPair t =
              c ? tensor_at_nonzero_matsubara(sheet, zeta, y) : TensorPair{};
          bounds = bounds && std::fabs(r_tm(eps, zeta, y, t)) <= 1.0 &&
                   std::fabs(r_te(eps, zeta, y, t)) <= 1.0;
        }
      }
    }
    ok = ok && bounds;
    detail << "|R|<=1:" << (bounds ? "ok" : "VIOLATED") << "; ";
  }

  {  // tensor algebraic identity to 1e-12
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double pa = std::numbers::pi * kc.fine_structure;
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double zeta = 30.0 * u(rng);
      const double y = zeta + 1e-9 + 30.0 * u(rng);
      const TensorPair t = zero_temperature_tensor(sheet, zeta, y);
      const double rhs = pa * pa * (y * y - zeta * zeta);
      if (rhs > 0.0)
        worst = std::max(
            worst,
            std::fabs(t.pi00 * t.pi_tr_minus_weighted_pi00 - rhs) / rhs);
    }
    ok = ok && worst <= 1e-12;
    detail << "tensor identity " << worst << "; ";
  }

  {  // force = -dF/da by 5-point central differences, 0.1%
    const ComputeSettings tight{1e-10, 1e-11, 100000, 1e-8, 0};
    const Surface s = coated("SiO2");
    const AtomModel& rb = builtin_atom("Rb");
    double worst = 0.0;
    for (const double a : {200.0, 1000.0, 5000.0}) {
      const double h = a * 5e-3;
      auto F = [&](double x) {
        return free_energy(s, rb, Geometry(x, 300.0), tight).value_si;
      };
      const double dFda =
          (F(a - 2 * h) - 8.0 * F(a - h) + 8.0 * F(a + h) - F(a + 2 * h)) /
          (12.0 * h) * 1e9;
      const double f = force(s, rb, Geometry(a, 300.0), tight).value_si;
      worst = std::max(worst, std::fabs((f + dFda) / f));
    }
    ok = ok && worst <= 1e-3;
    detail << "force=-dF/da " << worst << "; ";
  }

  {  // Drude vs plasma extrapolation leaves ratios unchanged to 0.1%
    double worst = 0.0;
    for (const double a : {100.0, 1000.0, 6000.0}) {
      const double rd = ratio(RatioKind::FreeEnergy, "Au", "Rb", a);
      const double rp = ratio(RatioKind::FreeEnergy, "Au-plasma", "Rb", a);
      worst = std::max(worst, std::fabs(rd - rp));
    }
    ok = ok && worst <= 1e-3;
    detail << "Drude-vs-plasma " << worst << "; ";
  }

  {  // constant approximation vs the exact thermal integral, in regime
    const double t100 = tau(Geometry(100.0, 300.0));
    const double approx =
        pi00_classical(Geometry(100.0, 300.0), sheet).value;
    const double exact = pi00_thermal_zero_freq(sheet, 1.0, t100);
    const double dev = std::fabs(exact - approx) / exact;
    ok = ok && dev <= 5e-3;
    detail << "Pi00 approx " << dev << "; ";
  }

  {  // Kramers-Kronig of a synthetic Lorentzian vs the closed form, 1e-5
    const double c = 2.0, wj = 1.0, gg = 0.2;
    OpticalDataTable tab;
    const double w0 = 1e-4, w1 = 3e3;
    const int n = static_cast<int>(2000 * std::log10(w1 / w0)) + 1;
    for (int i = 0; i < n; ++i) {
      const double w = w0 * std::pow(w1 / w0, static_cast<double>(i) / (n - 1));
      const double d = wj * wj - w * w;
      tab.omega_ev.push_back(w);
      tab.im_eps.push_back(c * wj * wj * gg * w / (d * d + gg * gg * w * w));
    }
    const double xi = 1.0;
    const double expected = 1.0 + c * wj * wj / (wj * wj + xi * xi + gg * xi);
    const double got = kramers_kronig_imaginary(tab, xi);
    const double dev = std::fabs(got - expected) / expected;
    ok = ok && dev <= 1e-5;
    detail << "KK Lorentzian " << dev << "; ";
  }

  {  // determinism: bitwise-identical sweep under different thread counts
    std::vector<double> seps;
    for (int i = 0; i < 8; ++i) seps.push_back(200.0 * std::pow(1.7, i));
    ComputeSettings s1, s4;
    s1.threads = 1;
    s4.threads = 4;
    const auto a = ratio_sweep(coated("SiO2"), bare("SiO2"),
                               builtin_atom("He*"), seps, 300.0,
                               RatioKind::Force, s1);
    const auto b = ratio_sweep(coated("SiO2"), bare("SiO2"),
                               builtin_atom("He*"), seps, 300.0,
                               RatioKind::Force, s4);
    bool same = true;
    for (std::size_t i = 0; i < a.size(); ++i)
      same = same && a[i].ok && b[i].ok &&
             std::memcmp(&a[i].ratio, &b[i].ratio, sizeof(double)) == 0;
    ok = ok && same;
    detail << "determinism:" << (same ? "ok" : "VIOLATED");
  }

  report(7, ok, "property suite", detail.str());
}

// criterion 8: tau at 100 nm, 300 K
void criterion_8() {
  const double t = tau(Geometry(100.0, 300.0));
  std::ostringstream detail;
  detail << "tau = " << t;
  report(8, std::fabs(t - 0.164) <= 1e-3, "tau(100 nm, 300 K) = 0.164 +- 0.001",
         detail.str());
}

}  // namespace

int main() {
  try {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
  } catch (const std::exception& e) {
    std::printf("FAIL: unexpected exception: %s\n", e.what());
    return 1;
  }
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
