#include <sstream>

#include "doctest.h"
#include "fobie/errors.hpp"
#include "fobie/solver.hpp"
#include "fobie/verify.hpp"

using namespace fobie;
using doctest::Approx;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

// Scattered field of a plane wave e^{ikz} x-hat off the PEC unit sphere,
// from an independent vector Mie series (mpmath, 30 digits, 30 terms).
struct MieRef {
  double k, r, theta, phi;
  CVec3 e;
};
const MieRef kMie[] = {
    {1.0, 2.0, 0.9, 0.4,
     {{{-0.09114316744745031, 0.20165378929404917},
       {0.09347776352584411, 0.13401169734647347},
       {0.073485558722728397, 0.34246029076661927}}}},
    {1.0, 2.0, 2.3, -1.2,
     {{{-0.39838494629304627, 0.12983386198861846},
       {-0.083235618807165068, -0.058346108629908681},
       {-0.10504837441345929, -0.024276696689220813}}}},
    {2.5, 1.5, 1.3, 2.0,
     {{{-0.074027571607028844, -0.41632338852654099},
       {0.0043447743525640422, -0.25659387627574615},
       {0.065544194477633586, 0.064719565089192785}}}},
};

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("spectrum values") {
  CHECK(rel(lambda1({1.0, 1.0}, 0), {0.25, 0.25}) < 1e-14);
  const WaveContext c(2.0, 1.0);
  CHECK(rel(lambda1(c, 5), {-1.7905017008305513, 0.00572367660974757}) < 1e-13);
  CHECK(rel(lambda2(c, 5), {0.93906689328524727, 0.010000769114544333}) < 1e-13);
  const Formulation1Spectrum f1(c, 30);
  const Formulation2Spectrum f2(c, 30);
  CHECK(f1.lmax() == 30);
  CHECK(rel(f1.lambda1(5), lambda1(c, 5)) < 1e-15);
  CHECK(rel(f2.lambda2(5), lambda2(c, 5)) < 1e-15);
}

TEST_CASE("plane wave against independent Mie series") {
  for (const auto& m : kMie) {
    const WaveContext ctx(m.k, default_eta(m.k));
    const IncidentTraces tr = plane_wave_traces({0, 0, 1}, {1, 0, 0}, ctx, 30);
    const SpectralOperators ops(ctx, tr.lmax());
    for (int f : {1, 2}) {
      const CVec3 e = evaluate_scattered(scatter(tr, ops, f), tr, m.r, m.theta, m.phi);
      for (int j = 0; j < 3; ++j) CHECK(rel(e[j], m.e[j]) < 1e-10);
    }
  }
}

TEST_CASE("lambda1 stays away from zero for k >= 0.2") {
  for (double k : verify::log_grid(0.2, 100.0, 25)) {
    const Formulation1Spectrum f(WaveContext(k, 1.0), 200);
    for (int l = 0; l <= 200; ++l) CHECK(std::abs(f.lambda1(l)) > 0.01);
  }
}

TEST_CASE("clustering and growth at k = 1") {
  for (const auto& c : verify::asymptotics(1.0)) CHECK_MESSAGE(c.passed, c.detail);
}

TEST_CASE("plane wave traces") {
  const WaveContext ctx(1.7, 1.7);
  const Vec3 d{0, 0.6, 0.8}, p{1, 0, 0};
  const IncidentTraces tr = plane_wave_traces(d, p, ctx, 30);
  CHECK(tr.e_tangential.lmax() == tr.lmax());
  const double t = 1.1, ph = 0.3;
  const Vec3 x{std::sin(t) * std::cos(ph), std::sin(t) * std::sin(ph), std::cos(t)};
  const CVec3 e = plane_wave_field(d, p, ctx.k, x);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(synthesize(tr.e_trace[j], t, ph) - e[j]) < 1e-13);

  CHECK_THROWS_AS(plane_wave_traces({0, 0, 1}, {0, 0.6, 0.8}, ctx, 10), std::invalid_argument);
  CHECK_THROWS_AS(plane_wave_traces({0, 0, 2}, {1, 0, 0}, ctx, 10), std::invalid_argument);
}

TEST_CASE("solution does not depend on eta") {
  const IncidentTraces tr = plane_wave_traces({0, 0, 1}, {0, 1, 0}, {3.0, 3.0}, 25);
  for (int f : {1, 2}) {
    const ScatterSolution a = scatter(tr, SpectralOperators({3.0, 0.5}, tr.lmax()), f);
    const ScatterSolution b = scatter(tr, SpectralOperators({3.0, 20.0}, tr.lmax()), f);
    CHECK(relative_coeff_error(a.dn_Es, b.dn_Es) < 1e-12);
    CHECK(max_abs_diff(a.En, b.En) < 1e-12 * b.En.max_abs());
  }
}

TEST_CASE("formulations agree and tail is small") {
  const WaveContext ctx(6.0, 6.0);
  const IncidentTraces tr = plane_wave_traces({1, 0, 0}, {0, 0, 1}, ctx, 40);
  const SpectralOperators ops(ctx, tr.lmax());
  const ScatterSolution a = scatter(tr, ops, 1), b = scatter(tr, ops, 2);
  CHECK(relative_coeff_error(a.dn_Es, b.dn_Es) < 1e-10);
  CHECK(a.tail_rel < 1e-14);
  CHECK_THROWS_AS(scatter(tr, ops, 3), std::invalid_argument);
}

TEST_CASE("exterior evaluation rejects points on or inside the sphere") {
  const WaveContext ctx(1.0, 1.0);
  const IncidentTraces tr = plane_wave_traces({0, 0, 1}, {1, 0, 0}, ctx, 8);
  const ScatterSolution s = scatter(tr, SpectralOperators(ctx, tr.lmax()), 1);
  CHECK_THROWS_AS(evaluate_scattered(s, tr, 1.0, 0.5, 0.5), std::domain_error);
}

TEST_CASE("spectrum csv is deterministic") {
  std::ostringstream a, b;
  write_spectrum_csv(a, {1.0, 1.0}, 50);
  write_spectrum_csv(b, {1.0, 1.0}, 50);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("\n0,-1,1,0.25,0.25,") != std::string::npos);
}

TEST_CASE("solution json") {
  const WaveContext ctx(1.0, 1.0);
  const IncidentTraces tr = plane_wave_traces({0, 0, 1}, {1, 0, 0}, ctx, 6);
  const auto j = to_json(scatter(tr, SpectralOperators(ctx, tr.lmax()), 2));
  CHECK(j["dn_Es"].size() == 3);
  CHECK(j.contains("En"));
  CHECK(j["k"] == 1.0);
}

}
