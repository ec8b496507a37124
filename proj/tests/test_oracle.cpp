#include "doctest.h"
#include "fobie/lift_ops.hpp"
#include "fobie/oracle.hpp"
#include "fobie/verify.hpp"

using namespace fobie;
using namespace fobie::oracle;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

MultipoleSpec two_terms() { return MultipoleSpec{{{2, 1, {0.4, -1.0}, 0.8}, {1, -1, 0.0, {0.0, 1.5}}}}; }

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("layer quadrature reproduces eigenvalues") {
  const WaveContext ctx(2.0, 1.0);
  for (int l : {0, 3, 6}) {
    const HarmonicIndex idx{l, l > 0 ? 1 : 0};
    const cplx y = sph_harmonic(idx, 1.2, 0.5);
    const cplx s = quad_apply_layer(LayerKind::Single, CoeffField::delta(l, idx), 1.2, 0.5, ctx,
                                    40, 80);
    const cplx k = quad_apply_layer(LayerKind::Double, CoeffField::delta(l, idx), 1.2, 0.5, ctx,
                                    40, 80);
    CHECK(rel(s, eig_single_layer(ctx, l) * y) < 1e-11);
    CHECK(rel(k, eig_double_layer(ctx, l) * y) < 1e-11);
  }
}

TEST_CASE("Sn matrix is diagonal") {
  for (const auto& c : verify::sn_diagonalization({2.0}, 6)) CHECK_MESSAGE(c.passed, c.name);
}

TEST_CASE("dense matrices") {
  const WaveContext ctx(1.0, 1.0);
  const auto m1 = dense_assemble(1, ctx, 5);
  const auto m2 = dense_assemble(2, ctx, 5, DenseForm::Full);
  CHECK(m1.ncomp == 3);
  CHECK(m2.ncomp == 4);
  CHECK(m1.a.rows() == 3 * 36);
  CHECK(m2.a.cols() == 4 * 36);
  CHECK(m1.row(1, {2, -1}) == 36 + 5);

  VectorCoeffField v(3, 5);
  v[2].at({4, 2}) = {1.0, -2.0};
  CHECK(max_abs_diff(unpack(pack(v, 5), 3, 5), v) == 0.0);
}

TEST_CASE("singular dense system is refused") {
  DenseOperatorMatrix m{1, 1, Eigen::MatrixXcd::Zero(4, 4)};
  CHECK_THROWS_AS(dense_solve(m, Eigen::VectorXcd::Ones(4)), std::runtime_error);
}

TEST_CASE("dense and diagonal solves agree") {
  const auto r = verify::cross_formulation(0.8, 16, 9);
  for (const auto& c : r) CHECK_MESSAGE(c.passed, c.name);
}

TEST_CASE("multipole coefficients match the direct field") {
  const WaveContext ctx(1.3, 1.3);
  const MultipoleSpec spec = two_terms();
  const auto mc = multipole_coefficients(spec, ctx, 4);
  for (double t : {0.4, 1.5, 2.6}) {
    const CVec3 x = multipole_field(spec, ctx, 1.0, t, 0.9);
    for (int j = 0; j < 3; ++j) CHECK(std::abs(synthesize(mc.e[j], t, 0.9) - x[j]) < 1e-13);
  }
  CHECK(max_abs_diff(dot_normal(mc.e), mc.e_dot_x) < 1e-13);
}

TEST_CASE("manufactured problems solve exactly") {
  for (double k : {0.5, 4.0})
    for (const auto& c : verify::manufactured(k)) CHECK_MESSAGE(c.passed, c.name);
}

TEST_CASE("closed-form sphere coefficients") {
  for (double k : {0.7, 3.0})
    for (const auto& c : verify::regular_incidence_check(k)) CHECK_MESSAGE(c.passed, c.name);
}

TEST_CASE("multipole errors") {
  const WaveContext ctx(1.0, 1.0);
  CHECK_THROWS_AS(multipole_traces(two_terms(), ctx, 2), std::invalid_argument);
  CHECK_THROWS_AS(multipole_traces(MultipoleSpec{{{0, 0, 1.0, 1.0}}}, ctx, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(multipole_traces(MultipoleSpec{{{2, 3, 1.0, 1.0}}}, ctx, 3),
                  std::invalid_argument);
  CHECK_THROWS(multipole_field(two_terms(), ctx, 2.0, 0.0, 0.0));
}

TEST_CASE("multipole spec json forms") {
  const auto a = multipole_spec_from_json(nlohmann::json::parse(
      R"({"terms":[{"l":2,"m":-1,"a":[1,2],"b":0.5},{"l":3,"m":3,"a":{"re":0,"im":1},"b":0}]})"));
  REQUIRE(a.terms.size() == 2);
  CHECK(a.terms[0].a == cplx(1, 2));
  CHECK(a.terms[0].b == cplx(0.5, 0));
  CHECK(a.terms[1].a == cplx(0, 1));
  CHECK(a.max_degree() == 3);
  const auto b = multipole_spec_from_json(nlohmann::json::parse(R"([{"l":1,"m":0,"a":1,"b":1}])"));
  CHECK(b.terms.size() == 1);
  CHECK_THROWS(multipole_spec_from_json(nlohmann::json::parse(R"({"terms":[{"m":0}]})")));
}

}
