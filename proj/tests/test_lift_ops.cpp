#include <random>

#include "doctest.h"
#include "fobie/errors.hpp"
#include "fobie/lift_ops.hpp"
#include "fobie/verify.hpp"

using namespace fobie;
using doctest::Approx;

namespace {

CoeffField random_field(int lmax, unsigned seed) {
  std::mt19937 g(seed);
  std::normal_distribution<double> n;
  CoeffField f(lmax);
  for (auto& c : f.data()) c = {n(g), n(g)};
  return f;
}

cplx coeff(const std::vector<LiftTerm>& t, HarmonicIndex idx) {
  for (const auto& [i, v] : t)
    if (i == idx) return v;
  return 0.0;
}

}  // namespace

TEST_SUITE("lift_ops") {

TEST_CASE("lifts match quadrature for l <= 8") {
  const auto c = verify::lift_quadrature_gate(8);
  CHECK_MESSAGE(c.passed, c.detail);
  CHECK(c.residual < 1e-13);
}

TEST_CASE("injected sign fault is caught") {
  const auto c = verify::lift_quadrature_gate(4, true);
  CHECK_FALSE(c.passed);
  CHECK(c.residual > 0.1);
}

TEST_CASE("x3 Y_0^0 = Y_1^0 / sqrt(3)") {
  const auto t = lift_coeffs(3, {0, 0});
  REQUIRE(t.size() == 1);
  CHECK(t[0].first == HarmonicIndex{1, 0});
  CHECK(t[0].second.real() == Approx(1.0 / std::sqrt(3.0)));
}

TEST_CASE("targets stay inside the index range") {
  for (int axis = 1; axis <= 3; ++axis)
    for (int p = 0; p < 64; ++p)
      for (const auto& [t, v] : lift_coeffs(axis, HarmonicIndex::from_packed(p))) {
        CHECK(t.valid());
        CHECK(std::abs(v) > 0.0);
      }
  // x1 Y_0^0 has only the l = 1, m = +-1 targets
  CHECK(lift_coeffs(1, {0, 0}).size() == 2);
}

TEST_CASE("printed table differs only on axis 2") {
  for (int p = 0; p < 121; ++p) {
    const HarmonicIndex idx = HarmonicIndex::from_packed(p);
    for (int axis : {1, 3}) {
      const auto a = lift_coeffs(axis, idx), b = lift_coeffs_printed(axis, idx);
      for (const auto& [t, v] : a) CHECK(std::abs(coeff(b, t) - v) < 1e-14);
    }
    const auto a = lift_coeffs(2, idx), b = lift_coeffs_printed(2, idx);
    const HarmonicIndex up{idx.ell + 1, idx.m + 1};
    CHECK(std::abs(coeff(b, up) + coeff(a, up)) < 1e-14);
  }
  const auto info = verify::lift_printed_form(10);
  CHECK(info.informational);
  CHECK(info.residual == 121);
}

TEST_CASE("multiplication by x_j is hermitian") { CHECK(verify::lift_hermitian(15).passed); }

TEST_CASE("sum x_j^2 = 1") {
  const CoeffField f = random_field(9, 11);
  const CoeffField g = dot_normal(times_normal(f));
  CHECK(g.lmax() == 11);
  CHECK(max_abs_diff(g, f) < 1e-13);
}

TEST_CASE("lift table agrees with direct coefficients") {
  const LiftTable t(12);
  const CoeffField f = random_field(12, 5);
  for (int axis = 1; axis <= 3; ++axis)
    CHECK(max_abs_diff(apply_lift(axis, f, t), apply_lift(axis, f)) == 0.0);
  CHECK_THROWS(apply_lift(1, random_field(13, 1), t));
}

TEST_CASE("Sn diagonal matches composite path") {
  for (double k : {0.4, 2.0, 9.0}) {
    const DiagonalOperator scal = make_Scal({k, default_eta(k)}, 18);
    const auto r = compare_Sn(scal, random_field(14, 2));
    CHECK(r.discrepancy < 1e-12);
    CHECK(r.tail_rel < 1e-13);
    CHECK(sn_eigenvalue(scal, 0) == scal.eigenvalue(1));
  }
}

TEST_CASE("Sn needs Scal two degrees above the field") {
  const DiagonalOperator scal = make_Scal({1.0, 1.0}, 6);
  CHECK_NOTHROW(apply_Sn(scal, random_field(5, 1)));
  CHECK_THROWS_AS(apply_Sn_composite(scal, random_field(6, 1)), TruncationError);
}

}
