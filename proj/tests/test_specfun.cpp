#include <cmath>

#include "doctest.h"
#include "fobie/specfun.hpp"

using namespace fobie;
using doctest::Approx;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("specfun") {

// reference values from mpmath at 40 digits
TEST_CASE("bessel values against mpmath") {
  CHECK(sph_bessel_j(5, 2.5) == Approx(0.0073576387377689363).epsilon(1e-13));
  CHECK(sph_bessel_j(0, 0.3) == Approx(0.98506735553779858).epsilon(1e-14));
  CHECK(sph_hankel_h1(5, 2.5).imag() == Approx(-5.5991001548063243).epsilon(1e-13));
  CHECK(sph_bessel_j(100, 10.0) == Approx(5.8320401820058767e-90).epsilon(1e-12));
  CHECK(sph_bessel_j_deriv(7, 4.0) == Approx(0.0074891517593447209).epsilon(1e-12));
  CHECK(rel(sph_hankel_h1_deriv(3, 1.7), {0.062413711680247913, 4.8098090371934369}) < 1e-13);
}

TEST_CASE("extended range values") {
  CHECK(sph_hankel_h1_wide(200, 0.5).im.log10_abs() == Approx(494.21069159062509).epsilon(1e-13));
  CHECK(sph_bessel_j_wide(300, 1.0).log10_abs() == Approx(-706.08671980731758).epsilon(1e-13));
  CHECK(sph_bessel_j_wide(300, 1.0).sign() > 0);
}

TEST_CASE("double front ends refuse unrepresentable values") {
  CHECK_THROWS_AS(sph_bessel_j(300, 1.0), std::underflow_error);
  CHECK_THROWS_AS(sph_hankel_h1(200, 0.5), std::overflow_error);
  CHECK_THROWS_AS(sph_bessel_j(-1, 1.0), std::domain_error);
  CHECK_THROWS_AS(sph_bessel_j(3, 0.0), std::domain_error);
  CHECK_THROWS_AS(sph_hankel_h1(kMaxBesselDegree + 1, 1.0), std::domain_error);
}

TEST_CASE("wronskian j y' - j' y = 1/z^2 over the full range") {
  for (double z : {0.05, 1.0, 10.0, 150.0}) {
    const auto j = sph_bessel_j_sequence(301, z);
    const auto y = sph_bessel_y_sequence(301, z);
    for (int l = 1; l <= 300; ++l) {
      // j_l' = j_{l-1} - (l+1)/z j_l, same for y
      const WideReal c((l + 1) / z);
      const WideReal jd = j[l - 1] - c * j[l], yd = y[l - 1] - c * y[l];
      const double w = ((j[l] * yd - jd * y[l]) * WideReal(z * z)).to_double();
      CHECK(w == Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("three-term recurrence for j") {
  for (double z : {0.2, 3.0, 40.0}) {
    const auto j = sph_bessel_j_sequence(200, z);
    for (int l = 1; l < 200; ++l) {
      const WideReal lhs = j[l - 1] + j[l + 1];
      const WideReal rhs = WideReal((2 * l + 1) / z) * j[l];
      const WideReal scale = j[l - 1].abs() + j[l + 1].abs();
      CHECK(((lhs - rhs) / scale).abs().to_double() < 1e-13);
    }
  }
}

TEST_CASE("legendre carries the Condon-Shortley phase") {
  CHECK(assoc_legendre(1, 1, 0.5) == Approx(-std::sqrt(0.75)));
  CHECK(assoc_legendre(2, 0, 0.3) == Approx(0.5 * (3 * 0.09 - 1)));
}

TEST_CASE("harmonics against scipy/mpmath") {
  CHECK(rel(sph_harmonic({3, -2}, 0.7, 1.1), {-0.19091020291647632, -0.26227683853906436}) < 1e-13);
  CHECK(rel(sph_harmonic({5, 3}, 2.2, -0.4), {-0.14024861238995527, 0.360740695859789}) < 1e-13);
  CHECK(rel(sph_harmonic({1, 1}, 0.7, 1.1), {-0.10095844999023624, -0.19835908959917177}) < 1e-13);
}

TEST_CASE("negative order symmetry and packed table") {
  const auto all = sph_harmonic_all(12, 1.3, 0.8);
  for (int l = 0; l <= 12; ++l)
    for (int m = 1; m <= l; ++m) {
      const cplx a = all[HarmonicIndex{l, -m}.packed()];
      const cplx b = (m % 2 ? -1.0 : 1.0) * std::conj(all[HarmonicIndex{l, m}.packed()]);
      CHECK(std::abs(a - b) < 1e-15);
      CHECK(std::abs(all[HarmonicIndex{l, m}.packed()] - sph_harmonic({l, m}, 1.3, 0.8)) < 1e-14);
    }
}

TEST_CASE("packed index round trip") {
  for (int p = 0; p < 400; ++p) CHECK(HarmonicIndex::from_packed(p).packed() == p);
  CHECK(HarmonicIndex::from_packed(6) == HarmonicIndex{2, 0});
}

TEST_CASE("wide arithmetic") {
  const WideReal big(1e300);
  const WideReal r = big * big * big / (big * big);
  CHECK(r.to_double() == Approx(1e300));
  CHECK_FALSE((big * big).fits_double());
  CHECK(std::isinf((big * big).to_double()));
  CHECK((big * big).log10_abs() == Approx(600.0));
  CHECK((WideReal(2.0) - WideReal(3.0)).sign() == -1);
  CHECK(WideReal(1.0) < WideReal(1e-300) + WideReal(1.0) + WideReal(1e-10));
}

}
