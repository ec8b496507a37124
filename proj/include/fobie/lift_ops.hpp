#pragma once

// Multiplication by the Cartesian coordinates x1, x2, x3 on the unit sphere,
// acting on harmonic coefficients, and the normal-projected operator
// Sn psi = n . Scal[n psi] built from it.

#include <utility>
#include <vector>

#include "fobie/bio_spectra.hpp"
#include "fobie/harmonics.hpp"

namespace fobie {

using LiftTerm = std::pair<HarmonicIndex, cplx>;

// Expansion of x_axis * Y_l^m, axis in {1, 2, 3}. Targets have degree l-1
// or l+1; targets outside |M| <= L are omitted.
std::vector<LiftTerm> lift_coeffs(int axis, HarmonicIndex idx);

// The coefficient formulas as commonly printed, with the m = l special
// cases applied literally. Used only to report disagreements against
// lift_coeffs; not used by any solver path.
std::vector<LiftTerm> lift_coeffs_printed(int axis, HarmonicIndex idx);

// Precomputed lift_coeffs for all (axis, l, m) with l <= lmax.
class LiftTable {
public:
  // inject_sign_fault flips the sign of the first x1 coefficient of every
  // (l, m); exists so verification can prove it notices.
  explicit LiftTable(int lmax, bool inject_sign_fault = false);

  int lmax() const { return lmax_; }
  const std::vector<LiftTerm>& entries(int axis, HarmonicIndex idx) const;

private:
  int lmax_;
  std::vector<std::vector<LiftTerm>> terms_;  // [(axis-1) * npacked + packed]
};

// x_axis * f; the result has degree f.lmax() + 1.
CoeffField apply_lift(int axis, const CoeffField& f);
CoeffField apply_lift(int axis, const CoeffField& f, const LiftTable& table);

// sum_j x_j v_j (degree + 1)
CoeffField dot_normal(const VectorCoeffField& v);
// (x1 f, x2 f, x3 f) (degree + 1)
VectorCoeffField times_normal(const CoeffField& f);

// Diagonal of Sn: l/(2l+1) s_{l-1} + (l+1)/(2l+1) s_{l+1}, and s_1 at l = 0,
// with s_l read from the Scal table (which must reach degree l + 1).
cplx sn_eigenvalue(const DiagonalOperator& scal, int ell);

// Sn f by the diagonal formula.
CoeffField apply_Sn(const DiagonalOperator& scal, const CoeffField& f);

// Sn f by lift, Scal, lift, contract. Degrees above f.lmax() cancel exactly
// in exact arithmetic; TruncationError is thrown when their relative mass
// exceeds tail_tol.
CoeffField apply_Sn_composite(const DiagonalOperator& scal, const CoeffField& f,
                              double tail_tol = 1e-12);

struct SnComparison {
  CoeffField direct;
  CoeffField composite;
  double tail_rel = 0.0;     // sqrt(tail mass / total mass) of composite
  double discrepancy = 0.0;  // max |direct - composite|
};
SnComparison compare_Sn(const DiagonalOperator& scal, const CoeffField& f);

}  // namespace fobie
