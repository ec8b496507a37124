#include <random>

#include "doctest.h"
#include "fobie/errors.hpp"
#include "fobie/harmonics.hpp"

using namespace fobie;
using doctest::Approx;

namespace {

CoeffField random_field(int lmax, unsigned seed) {
  std::mt19937 g(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CoeffField f(lmax);
  for (auto& c : f.data()) c = {u(g), u(g)};
  return f;
}

}  // namespace

TEST_SUITE("harmonics") {

TEST_CASE("gauss-legendre three point rule") {
  std::vector<double> x, w;
  gauss_legendre(3, x, w);
  REQUIRE(x.size() == 3);
  // descending order
  CHECK(x[0] == Approx(std::sqrt(0.6)));
  CHECK(x[2] == Approx(-std::sqrt(0.6)));
  CHECK(x[1] == Approx(0.0));
  CHECK(w[0] == Approx(5.0 / 9.0));
  CHECK(w[1] == Approx(8.0 / 9.0));
}

TEST_CASE("grid weights sum to 4 pi") {
  const QuadratureGrid g(17, 33);
  double s = 0;
  for (int i = 0; i < g.n_theta(); ++i) s += g.weight(i) * g.n_phi();
  CHECK(s == Approx(4 * kPi));
  CHECK(g.exact_degree() == 32);
  CHECK(make_grid(10).exact_degree() >= 20);
}

TEST_CASE("orthonormality on make_grid") {
  const int L = 9;
  const QuadratureGrid g = make_grid(L);
  for (int p = 0; p < (L + 1) * (L + 1); p += 7) {
    const HarmonicIndex a = HarmonicIndex::from_packed(p);
    const CoeffField c = analyze([&](double t, double ph) { return sph_harmonic(a, t, ph); }, g,
                                 L, L);
    CHECK(max_abs_diff(c, CoeffField::delta(L, a)) < 1e-13);
  }
}

TEST_CASE("synthesize then analyze is the identity") {
  const CoeffField f = random_field(8, 7);
  const QuadratureGrid g = make_grid(8);
  const auto v = synthesize_on_grid(f, g);
  CHECK(max_abs_diff(analyze_samples(v, g, 8, 8), f) < 1e-13);
  CHECK(std::abs(integrate(v, g) - f[{0, 0}] * std::sqrt(4 * kPi)) < 1e-13);
}

TEST_CASE("grid too small is rejected") {
  const QuadratureGrid g = make_grid(6);
  auto f = [](double, double) { return cplx(1.0); };
  CHECK_THROWS_AS(analyze(f, g, 6, 8), GridTooSmall);
  CHECK_NOTHROW(analyze(f, g, 6, 6));
}

TEST_CASE("coefficient field access and truncation") {
  CoeffField f(3);
  f.at({2, -1}) = {1.0, 2.0};
  f.at({3, 3}) = 0.5;
  CHECK(f[{2, -1}] == cplx(1.0, 2.0));
  CHECK(f.get({7, 0}) == cplx(0.0));
  CHECK_THROWS_AS(f.at({4, 0}), std::out_of_range);
  const HarmonicIndex bad{2, 3};
  CHECK_THROWS_AS(f[bad], std::out_of_range);
  CHECK(f.tail_norm2(2) == Approx(0.25));
  CHECK(f.norm2() == Approx(5.25));
  CHECK(f.resized(2).lmax() == 2);
  CHECK(f.resized(2).norm2() == Approx(5.0));
  CHECK(f.resized(6).get({3, 3}) == cplx(0.5));

  CoeffField g(1);
  g += f;  // grows
  CHECK(g.lmax() == 3);
  CHECK(max_abs_diff(g, f) == 0.0);
  CHECK(max_abs_diff(2.0 * f - f, f) == 0.0);
}

TEST_CASE("json round trip") {
  const CoeffField f = random_field(5, 3);
  const CoeffField g = coeff_field_from_json(to_json(f));
  CHECK(g.lmax() == 5);
  CHECK(max_abs_diff(f, g) == 0.0);
  CHECK(to_json(CoeffField(4))["coeffs"].empty());
}

TEST_CASE("vector field pads to common degree") {
  const VectorCoeffField v({CoeffField(2), random_field(5, 1), CoeffField(0)});
  CHECK(v.lmax() == 5);
  for (const auto& c : v) CHECK(c.lmax() == 5);
  CHECK(v.resized(3)[1].lmax() == 3);
}

}
