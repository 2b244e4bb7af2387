#include "graphene.hpp"

#include <cmath>
#include <numbers>

#include "quadrature.hpp"

namespace caspol {

namespace {

constexpr double kPi = std::numbers::pi;

// ln(2 cosh z) for z >= 0 without overflow (cosh overflows near z ~ 710)
double ln_2cosh(double z) { return z + std::log1p(std::exp(-2.0 * z)); }

void check_sheet(const GrapheneSheet& s) {
  if (!(s.fermi_velocity_ratio > 0.0) || !(s.fermi_velocity_ratio < 1.0))
    fail(ErrorCode::InvalidArgument,
         "graphene: Fermi velocity ratio must lie in (0, 1)");
}

void check_thermal_args(double y, double tau) {
  if (!(y > 0.0)) fail(ErrorCode::InvalidArgument, "graphene: y must be > 0");
  if (!(tau > 0.0))
    fail(ErrorCode::InvalidArgument, "graphene: tau must be > 0");
}

// Both thermal integrals use x = (1 + sin u)/2, which turns sqrt(x(1-x))
// into cos(u)/2 and removes the endpoint derivative singularities.  The
// integrands are even in u, so we integrate over [0, pi/2] and double.
constexpr double kThermalRelTol = 1e-9;

}  // namespace

double pi00_thermal_zero_freq(const GrapheneSheet& sheet, double y, double tau,
                              const Constants& k) {
  if (!sheet.present) return 0.0;
  check_sheet(sheet);
  check_thermal_args(y, tau);
  const double vf = sheet.fermi_velocity_ratio;
  const double scale = kPi * vf * y / (2.0 * tau);  // (pi theta/tau) at cos u = 1
  auto f = [&](double u) {
    const double cu = std::cos(u);
    return ln_2cosh(scale * cu) * 0.5 * cu;
  };
  const auto q = integrate_adaptive(f, 0.0, kPi / 2.0, kThermalRelTol);
  if (!q.converged)
    fail(ErrorCode::NoConvergence,
         "graphene Pi00 quadrature did not converge (estimate " +
             std::to_string(q.value) + ")");
  return (8.0 * k.fine_structure * tau / (kPi * vf * vf)) * 2.0 * q.value;
}

double pi_tr_minus_pi00_thermal_zero_freq(const GrapheneSheet& sheet, double y,
                                          double tau, const Constants& k) {
  if (!sheet.present) return 0.0;
  check_sheet(sheet);
  check_thermal_args(y, tau);
  const double vf = sheet.fermi_velocity_ratio;
  const double scale = kPi * vf * y / (2.0 * tau);
  auto f = [&](double u) {
    const double cu = std::cos(u);
    return cu * cu * std::tanh(scale * cu);
  };
  const auto q = integrate_adaptive(f, 0.0, kPi / 2.0, kThermalRelTol);
  if (!q.converged)
    fail(ErrorCode::NoConvergence,
         "graphene Pi_tr quadrature did not converge (estimate " +
             std::to_string(q.value) + ")");
  return 2.0 * k.fine_structure * vf * y * 2.0 * q.value;
}

TensorPair zero_temperature_tensor(const GrapheneSheet& sheet, double zeta,
                                   double y, const Constants& k) {
  if (!sheet.present) return {};
  check_sheet(sheet);
  if (!(zeta >= 0.0))
    fail(ErrorCode::InvalidArgument, "graphene: zeta must be >= 0");
  if (y < zeta)
    fail(ErrorCode::Domain, "graphene tensor requires y >= zeta");
  const double vf = sheet.fermi_velocity_ratio;
  const double f =
      std::sqrt(vf * vf * y * y + (1.0 - vf * vf) * zeta * zeta);
  if (f == 0.0) return {};  // y = zeta = 0 limit
  const double pa = kPi * k.fine_structure;
  TensorPair t;
  t.pi00 = pa * (y * y - zeta * zeta) / f;
  t.pi_tr_minus_weighted_pi00 = pa * f;
  return t;
}

TensorPair tensor_at_nonzero_matsubara(const GrapheneSheet& sheet,
                                       double zeta_l, double y,
                                       const Constants& k) {
  if (!(zeta_l > 0.0))
    fail(ErrorCode::InvalidArgument,
         "graphene: nonzero-Matsubara form needs zeta_l > 0");
  return zero_temperature_tensor(sheet, zeta_l, y, k);
}

}  // namespace caspol
