#include "reflection.hpp"

#include <cmath>

namespace caspol {

double k_parameter(double eps, double zeta, double y) {
  if (!(y >= zeta) || !(zeta >= 0.0))
    fail(ErrorCode::InvalidArgument, "k_parameter requires y >= zeta >= 0");
  if (!(eps >= 1.0))
    fail(ErrorCode::InvalidArgument, "k_parameter requires eps >= 1");
  return std::sqrt(y * y + (eps - 1.0) * zeta * zeta);
}

double r_tm(double eps, double zeta, double y, const TensorPair& t) {
  if (!(y > zeta) || !(zeta >= 0.0))
    fail(ErrorCode::Domain, "r_tm requires y > zeta >= 0");
  if (std::isinf(eps)) return 1.0;
  const double k = k_parameter(eps, zeta, y);
  // y Pi00/(y^2 - zeta^2); with the closed-form tensor this is pi alpha y/f,
  // finite all the way down to y -> zeta
  const double g = y * t.pi00 / ((y - zeta) * (y + zeta));
  return (eps * y + k * (g - 1.0)) / (eps * y + k * (g + 1.0));
}

double r_te(double eps, double zeta, double y, const TensorPair& t) {
  if (!(y > zeta) || !(zeta >= 0.0))
    fail(ErrorCode::Domain, "r_te requires y > zeta >= 0");
  if (std::isinf(eps)) return -1.0;
  const double k = k_parameter(eps, zeta, y);
  const double q = t.pi_tr_minus_weighted_pi00;
  return (y - k - q) / (y + k + q);
}

double r_tm_zero_freq(const Surface& s, double y, double tau,
                      const Constants& kc) {
  if (!(y > 0.0)) fail(ErrorCode::InvalidArgument, "r_tm_zero_freq: y must be > 0");
  const auto eps0 = s.plate.static_limit();
  if (!eps0) return 1.0;  // metal, with or without coating
  if (!s.coated()) return (*eps0 - 1.0) / (*eps0 + 1.0);
  const double p = pi00_thermal_zero_freq(s.sheet(), y, tau, kc);
  return ((*eps0 - 1.0) * y + p) / ((*eps0 + 1.0) * y + p);
}

double r_te_zero_freq(const Surface& s, double y, double tau,
                      const Constants& kc) {
  if (!(y > 0.0)) fail(ErrorCode::InvalidArgument, "r_te_zero_freq: y must be > 0");
  if (!s.coated()) return 0.0;  // k_0 = y for any plate
  const double q = pi_tr_minus_pi00_thermal_zero_freq(s.sheet(), y, tau, kc);
  return -q / (2.0 * y + q);
}

}  // namespace caspol
