#pragma once

// Field-only PEC scattering by the unit sphere. Unknowns are the Neumann
// trace of the scattered field (three Cartesian components) and its normal
// component E_n. Both formulations reduce to one scalar diagonal solve.

#include <array>
#include <iosfwd>
#include <vector>

#include "fobie/bio_spectra.hpp"
#include "fobie/harmonics.hpp"
#include "json.hpp"

namespace fobie {

using Vec3 = std::array<double, 3>;
using CVec3 = std::array<cplx, 3>;

// lambda1 = 1 + s_{n,l}/2
cplx lambda1(const WaveContext& ctx, int ell);
// lambda2 = 1 + s_{n,l} - s_l
cplx lambda2(const WaveContext& ctx, int ell);

// Both spectra for l = 0..lmax from one s-sequence.
class Formulation1Spectrum {
public:
  Formulation1Spectrum(const WaveContext& ctx, int lmax);
  const WaveContext& context() const { return ctx_; }
  int lmax() const { return static_cast<int>(lam_.size()) - 1; }
  cplx lambda1(int ell) const { return lam_.at(static_cast<size_t>(ell)); }

private:
  WaveContext ctx_;
  std::vector<cplx> lam_;
};

class Formulation2Spectrum {
public:
  Formulation2Spectrum(const WaveContext& ctx, int lmax);
  const WaveContext& context() const { return ctx_; }
  int lmax() const { return static_cast<int>(lam_.size()) - 1; }
  cplx lambda2(int ell) const { return lam_.at(static_cast<size_t>(ell)); }

private:
  WaveContext ctx_;
  std::vector<cplx> lam_;
};

// Traces of one incident field on the unit sphere. All three fields share
// one truncation degree; e_tangential = n (n . E^i) - E^i.
struct IncidentTraces {
  VectorCoeffField e_tangential;
  VectorCoeffField dn_e;
  VectorCoeffField e_trace;

  int lmax() const { return e_trace.lmax(); }
  // Builds e_tangential from e_trace and pads everything to a common degree.
  static IncidentTraces from_trace(VectorCoeffField e_trace, VectorCoeffField dn_e);
};

struct ScatterSolution {
  WaveContext ctx;
  VectorCoeffField dn_Es;  // Neumann trace of E^s, j = 1..3
  CoeffField En;           // E^s . n
  double tail_rel = 0.0;   // relative coefficient mass dropped on truncation
};

// D(eta), Ncal(1/eta) and Scal tables wide enough for every intermediate
// degree the solvers produce from traces of degree lmax.
class SpectralOperators {
public:
  SpectralOperators(const WaveContext& ctx, int lmax);

  static constexpr int kHeadroom = 8;

  const WaveContext& context() const { return ctx_; }
  int lmax() const { return lmax_; }
  const DiagonalOperator& D() const { return D_; }
  const DiagonalOperator& Ncal_inv() const { return Ncal_; }
  const DiagonalOperator& Scal() const { return Scal_; }

private:
  WaveContext ctx_;
  int lmax_;
  DiagonalOperator D_, Ncal_, Scal_;
};

// -i eta Ncal(1/eta) [E^i + 1/2 n (n . dn E^i)]
VectorCoeffField assemble_rhs_f1(const IncidentTraces& traces, const SpectralOperators& ops);
// i eta Ncal(1/eta) [E_t ; x . E_t]
VectorCoeffField assemble_rhs_f2(const IncidentTraces& traces, const SpectralOperators& ops);

// Diagonal Woodbury solves. The solution is truncated to traces.lmax() + 1.
// solve_f1 needs the incident traces again to recover E_n.
ScatterSolution solve_f1(const VectorCoeffField& rhs, const IncidentTraces& traces,
                         const SpectralOperators& ops);
ScatterSolution solve_f2(const VectorCoeffField& rhs, const IncidentTraces& traces,
                         const SpectralOperators& ops);

// assemble + solve
ScatterSolution scatter(const IncidentTraces& traces, const SpectralOperators& ops,
                        int formulation);

// E^i = p exp(i k d . x). Throws std::invalid_argument unless |d| = |p| = 1
// and |p . d| <= 1e-12.
IncidentTraces plane_wave_traces(const Vec3& direction, const Vec3& polarization,
                                 const WaveContext& ctx, int lmax);
// Pointwise plane-wave value, for checks.
CVec3 plane_wave_field(const Vec3& direction, const Vec3& polarization, double k,
                       const Vec3& x);

// E^s at r x-hat (r > 1) from the Green representation of each component.
CVec3 evaluate_scattered(const ScatterSolution& sol, const IncidentTraces& traces, double r,
                         double theta, double phi);

// max over components of max |a - b| on the union of coefficients, divided
// by the max coefficient modulus of b
double relative_coeff_error(const VectorCoeffField& a, const VectorCoeffField& b);

nlohmann::json to_json(const ScatterSolution& sol);
// l, re/im lambda1, re/im lambda2, |lambda1|, |lambda2 - 1|
void write_spectrum_csv(std::ostream& os, const WaveContext& ctx, int lmax);

}  // namespace fobie
