#include <doctest.h>

#include <cstring>

#include "units.hpp"

using namespace caspol;

TEST_CASE("constants match their defining values") {
  const Constants& k = default_constants();
  CHECK(k.fine_structure > 7.29e-3);
  CHECK(k.fine_structure < 7.30e-3);
  CHECK(k.fermi_velocity_ratio == doctest::Approx(9.0e5 / 2.99792458e8).epsilon(1e-15));
  CHECK(k.fermi_velocity_ratio == doctest::Approx(3.002e-3).epsilon(1e-4));
  // 1.482e-31 m^3 expressed in nm^3
  CHECK(k.polarizability_au == doctest::Approx(1.482e-4).epsilon(1e-15));
}

TEST_CASE("geometry validation") {
  CHECK_NOTHROW(Geometry(100.0, 0.0));
  CHECK_THROWS_AS(Geometry(0.0, 300.0), Error);
  CHECK_THROWS_AS(Geometry(-1.0, 300.0), Error);
  CHECK_THROWS_AS(Geometry(100.0, -1.0), Error);
  CHECK(omega_c_ev(Geometry(100.0, 300.0)) ==
        doctest::Approx(197.327 / 200.0).epsilon(1e-15));
}

TEST_CASE("tau against the quoted 100 nm value") {
  // reference: 0.164 +- 0.001
  CHECK(std::fabs(tau(Geometry(100.0, 300.0)) - 0.164) < 1e-3);
  // reference_values.py: 0.16463322330752644
  CHECK(tau(Geometry(100.0, 300.0)) ==
        doctest::Approx(0.16463322330752644).epsilon(1e-15));
  CHECK(tau(Geometry(200.0, 300.0)) ==
        doctest::Approx(0.32926644661505289).epsilon(1e-15));
  CHECK(tau(Geometry(100.0, 0.0)) == 0.0);
  // linear in separation
  CHECK(tau(Geometry(200.0, 300.0)) ==
        doctest::Approx(2.0 * tau(Geometry(100.0, 300.0))).epsilon(1e-15));
}

TEST_CASE("matsubara frequencies") {
  const Geometry g(100.0, 300.0);
  CHECK(matsubara_zeta(g, 0) == 0.0);
  CHECK(matsubara_zeta(g, 1) == doctest::Approx(tau(g)).epsilon(1e-15));
  // reference_values.py: zeta(1um, 300K, l=3) = 4.9389966992257932
  CHECK(matsubara_zeta(Geometry(1000.0, 300.0), 3) ==
        doctest::Approx(4.9389966992257932).epsilon(1e-14));

  SUBCASE("zeta_l = l tau exactly, strictly increasing") {
    double prev = -1.0;
    for (long l = 0; l < 50; ++l) {
      const double z = matsubara_zeta(g, l);
      CHECK(z == static_cast<double>(l) * tau(g));
      CHECK(z > prev);
      prev = z;
    }
  }
  SUBCASE("undefined at T = 0") {
    CHECK_THROWS_AS(matsubara_zeta(Geometry(100.0, 0.0), 1), Error);
    CHECK_THROWS_AS(matsubara_zeta(g, -1), Error);
  }
}

TEST_CASE("conversions are pure") {
  const Geometry g(317.0, 212.5);
  const double a = tau(g);
  const double b = tau(g);
  CHECK(std::memcmp(&a, &b, sizeof a) == 0);
}
