#pragma once

// Independent reference computations: direct singular quadrature of the
// layer operators, dense truncated matrices with LU, and exact radiating
// multipole fields.

#include <Eigen/Dense>
#include <vector>

#include "fobie/bio_spectra.hpp"
#include "fobie/solver.hpp"

namespace fobie::oracle {

enum class LayerKind { Single, Double };

// S[density](x) or K[density](x) for x = (theta, phi) on the unit sphere.
// The singular point is rotated to the pole of a local frame; both kernels
// times the area element are smooth there, so a plain tensor Gauss rule in
// (theta', phi') converges spectrally.
cplx quad_apply_layer(LayerKind kind, const CoeffField& density, double theta, double phi,
                      const WaveContext& ctx, int n_theta = 120, int n_phi = 240);

// ---- dense matrices -------------------------------------------------------

enum class DenseForm {
  Reduced,  // D^{-1} applied: I + Scal[1/2 n n^T] or I - Scal[u v^T]
  Full,     // the combined-field operator before D^{-1}
};

struct DenseOperatorMatrix {
  int lmax = 0;
  int ncomp = 0;
  Eigen::MatrixXcd a;

  int block() const { return (lmax + 1) * (lmax + 1); }
  Eigen::Index row(int comp, HarmonicIndex idx) const {
    return static_cast<Eigen::Index>(comp) * block() + idx.packed();
  }
};

DenseOperatorMatrix dense_assemble(int formulation, const WaveContext& ctx, int lmax,
                                   DenseForm form = DenseForm::Reduced);

// Matrix of Sn by the composite lift path, lmax x lmax block.
Eigen::MatrixXcd dense_Sn(const WaveContext& ctx, int lmax);

Eigen::VectorXcd pack(const VectorCoeffField& f, int lmax);
VectorCoeffField unpack(const Eigen::VectorXcd& v, int ncomp, int lmax);

struct DenseSolve {
  Eigen::VectorXcd x;
  double residual = 0.0;  // ||A x - b|| / ||b||
};
// Partial-pivot LU; throws std::runtime_error when the relative residual
// exceeds 1e-10 (pivot growth made the factorization useless).
DenseSolve dense_solve(const DenseOperatorMatrix& m, const Eigen::VectorXcd& b);

// Solves the truncated dense system for the given traces and returns the
// unknowns in the same layout as the diagonal solvers.
ScatterSolution dense_scatter(const IncidentTraces& traces, const WaveContext& ctx,
                              int formulation, int lmax, DenseForm form);

// ---- multipoles -------------------------------------------------------------

struct MultipoleTerm {
  int ell = 1;
  int m = 0;
  cplx a;  // T-mode weight
  cplx b;  // I/N-mode weight
};

struct MultipoleSpec {
  std::vector<MultipoleTerm> terms;
  int max_degree() const;
};

enum class Radial { Outgoing, Regular };

// Cartesian coefficient fields of a multipole on the unit sphere.
struct MultipoleTraces {
  VectorCoeffField e;     // E_j
  VectorCoeffField dr_e;  // d/dr E_j
  CoeffField e_dot_x;     // E . x
};
MultipoleTraces multipole_coefficients(const MultipoleSpec& spec, const WaveContext& ctx,
                                       int lmax, Radial radial = Radial::Outgoing);

struct ManufacturedProblem {
  ScatterSolution exact;
  IncidentTraces traces;
};
// E^s is the outgoing multipole; the incident field is its negative, so the
// tangential total field vanishes. Throws std::invalid_argument if lmax is
// below max_degree() + 1 or a term is invalid.
ManufacturedProblem multipole_traces(const MultipoleSpec& spec, const WaveContext& ctx,
                                     int lmax);

// Incident field a regular multipole; exact scattered field from the
// closed-form sphere coefficients.
ManufacturedProblem regular_incidence(const MultipoleSpec& incident, const WaveContext& ctx,
                                      int lmax, MultipoleSpec* scattered_out = nullptr);

// Direct pointwise evaluation from surface gradients, independent of the
// lift tables. Points on the polar axis are not supported.
CVec3 multipole_field(const MultipoleSpec& spec, const WaveContext& ctx, double r, double theta,
                      double phi, Radial radial = Radial::Outgoing);

MultipoleSpec multipole_spec_from_json(const nlohmann::json& j);

}  // namespace fobie::oracle
