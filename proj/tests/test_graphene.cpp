#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "graphene.hpp"

using namespace caspol;

namespace {
const double kTau100 = 0.16463322330752644;  // tau at a = 100 nm, T = 300 K
}

TEST_CASE("thermal Pi00 at zero frequency") {
  GrapheneSheet sheet;
  // reference_values.py: 235.38352984227208
  CHECK(pi00_thermal_zero_freq(sheet, 1.0, kTau100) ==
        doctest::Approx(235.38352984227208).epsilon(1e-7));

  SUBCASE("small-y limit is (8 alpha tau / pi vF^2) ln 2") {
    const Constants& k = default_constants();
    const double coeff = 8.0 * k.fine_structure * kTau100 * std::numbers::ln2 /
                         (std::numbers::pi * k.fermi_velocity_ratio *
                          k.fermi_velocity_ratio);
    CHECK(pi00_thermal_zero_freq(sheet, 1e-6, kTau100) ==
          doctest::Approx(coeff).epsilon(1e-9));
    // reference_values.py: 235.29070612428248
    CHECK(coeff == doctest::Approx(235.29070612428248).epsilon(1e-12));
  }

  SUBCASE("large-y asymptote is linear: approaches pi alpha y / vF") {
    const Constants& k = default_constants();
    const double y = 1e3;
    const double asym =
        std::numbers::pi * k.fine_structure * y / k.fermi_velocity_ratio;
    CHECK(pi00_thermal_zero_freq(sheet, y, kTau100) ==
          doctest::Approx(asym).epsilon(5e-3));
    // slope test: value doubles when y doubles, deep in the linear regime
    const double v1 = pi00_thermal_zero_freq(sheet, 1e3, kTau100);
    const double v2 = pi00_thermal_zero_freq(sheet, 2e3, kTau100);
    CHECK(v2 / v1 == doctest::Approx(2.0).epsilon(2e-3));
  }

  SUBCASE("absent sheet contributes nothing") {
    GrapheneSheet off{0.003, false};
    CHECK(pi00_thermal_zero_freq(off, 1.0, kTau100) == 0.0);
    CHECK(pi_tr_minus_pi00_thermal_zero_freq(off, 1.0, kTau100) == 0.0);
  }

  CHECK_THROWS_AS(pi00_thermal_zero_freq(sheet, 0.0, kTau100), Error);
  CHECK_THROWS_AS(pi00_thermal_zero_freq(sheet, 1.0, 0.0), Error);
}

TEST_CASE("thermal Pi_tr - Pi00 at zero frequency") {
  GrapheneSheet sheet;
  // reference_values.py: 1.6729581230862201e-06
  CHECK(pi_tr_minus_pi00_thermal_zero_freq(sheet, 1.0, kTau100) ==
        doctest::Approx(1.6729581230862201e-06).epsilon(1e-7));

  SUBCASE("leading small-y behaviour is quadratic in y") {
    const double q1 = pi_tr_minus_pi00_thermal_zero_freq(sheet, 1e-4, kTau100);
    const double q2 = pi_tr_minus_pi00_thermal_zero_freq(sheet, 2e-4, kTau100);
    CHECK(q2 / q1 == doctest::Approx(4.0).epsilon(1e-6));
    // tanh series: 2 alpha vF y * (pi vF y / 2 tau) * Int cos^3 u du, with
    // the integral over [-pi/2, pi/2] equal to 4/3
    const Constants& k = default_constants();
    const double y = 1e-4;
    const double series = 2.0 * k.fine_structure * k.fermi_velocity_ratio * y *
                          (std::numbers::pi * k.fermi_velocity_ratio * y /
                           (2.0 * kTau100)) *
                          (4.0 / 3.0);
    CHECK(q1 == doctest::Approx(series).epsilon(1e-6));
  }
}

TEST_CASE("zero-temperature tensor closed forms") {
  GrapheneSheet sheet;
  const Constants& k = default_constants();

  // reference_values.py: pi00(1,2) and the weighted combination
  const TensorPair t = tensor_at_nonzero_matsubara(sheet, 1.0, 2.0);
  CHECK(t.pi00 == doctest::Approx(0.068774997924947512).epsilon(1e-14));
  CHECK(t.pi_tr_minus_weighted_pi00 ==
        doctest::Approx(0.022925619140608734).epsilon(1e-14));

  SUBCASE("y = zeta edge") {
    const TensorPair e = tensor_at_nonzero_matsubara(sheet, 2.0, 2.0);
    CHECK(e.pi00 == 0.0);
    CHECK(e.pi_tr_minus_weighted_pi00 ==
          doctest::Approx(std::numbers::pi * k.fine_structure * 2.0)
              .epsilon(1e-12));
  }
  SUBCASE("zeta = 0: pi00 = pi alpha y / vF") {
    const TensorPair z = zero_temperature_tensor(sheet, 0.0, 1.0);
    // reference_values.py: 7.6364831135373512
    CHECK(z.pi00 == doctest::Approx(7.6364831135373512).epsilon(1e-14));
  }
  SUBCASE("absent sheet") {
    GrapheneSheet off{0.003, false};
    const TensorPair z = zero_temperature_tensor(off, 0.5, 1.0);
    CHECK(z.pi00 == 0.0);
    CHECK(z.pi_tr_minus_weighted_pi00 == 0.0);
  }
  SUBCASE("domain errors") {
    CHECK_THROWS_AS(zero_temperature_tensor(sheet, 2.0, 1.0), Error);
    CHECK_THROWS_AS(tensor_at_nonzero_matsubara(sheet, 0.0, 1.0), Error);
  }
}

TEST_CASE("algebraic identity pi00 * (pi_tr - weighted) = (pi alpha)^2 (y^2 - z^2)") {
  GrapheneSheet sheet;
  const Constants& k = default_constants();
  const double pa = std::numbers::pi * k.fine_structure;
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double zeta = 40.0 * u(rng);
    const double y = zeta + 40.0 * u(rng);
    const TensorPair t = zero_temperature_tensor(sheet, zeta, y);
    CHECK(t.pi00 >= 0.0);
    CHECK(t.pi_tr_minus_weighted_pi00 >= 0.0);
    const double lhs = t.pi00 * t.pi_tr_minus_weighted_pi00;
    const double rhs = pa * pa * (y * y - zeta * zeta);
    if (rhs > 0.0) CHECK(std::fabs(lhs - rhs) <= 1e-12 * rhs);
  }
}

TEST_CASE("thermal form joins the T=0 form as tau -> 0") {
  GrapheneSheet sheet;
  const double t0 = zero_temperature_tensor(sheet, 0.0, 1.0).pi00;
  const double thermal = pi00_thermal_zero_freq(sheet, 1.0, 1e-4);
  CHECK(std::fabs(thermal - t0) / t0 < 0.01);
}

TEST_CASE("constant approximation holds in the small-argument regime") {
  // regime: pi vF y / (2 tau) < 0.05 at y = 1
  GrapheneSheet sheet;
  const Constants& k = default_constants();
  REQUIRE(std::numbers::pi * k.fermi_velocity_ratio / (2.0 * kTau100) < 0.05);
  const double approx = 8.0 * k.fine_structure * std::numbers::ln2 * kTau100 /
                        (std::numbers::pi * k.fermi_velocity_ratio *
                         k.fermi_velocity_ratio);
  const double exact = pi00_thermal_zero_freq(sheet, 1.0, kTau100);
  CHECK(std::fabs(exact - approx) / exact < 0.005);
}
