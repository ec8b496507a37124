#pragma once

// Eigenvalues of the Helmholtz layer operators on the unit sphere. Every
// operator here is diagonal in the Y_l^m basis with an m-independent
// eigenvalue, so the spectrum is one complex number per degree.

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "fobie/harmonics.hpp"
#include "fobie/specfun.hpp"

namespace fobie {

struct WaveContext {
  double k = 1.0;
  double eta = 1.0;

  WaveContext() = default;
  WaveContext(double k_, double eta_);
  // same k, eta -> 1/eta
  WaveContext inverted_eta() const { return {k, 1.0 / eta}; }
};

// max(1, k)
double default_eta(double k);

// Single-degree eigenvalues. K and K^T share one spectrum.
cplx eig_single_layer(const WaveContext& ctx, int ell);
cplx eig_double_layer(const WaveContext& ctx, int ell);
cplx eig_hypersingular(const WaveContext& ctx, int ell);

// D(eta) = 1/2 + K^T - i eta S,  Ncal(eta) = 1/2 - K - i eta N.
// eig_Ncal uses ctx.eta as given; callers pass ctx.inverted_eta() for the
// Ncal(1/eta) factor.
cplx eig_D(const WaveContext& ctx, int ell);
cplx eig_Ncal(const WaveContext& ctx, int ell);
// i eta D(eta)^{-1} Ncal(1/eta); throws DegenerateOperator if |D| < 1e-14.
cplx eig_Scal(const WaveContext& ctx, int ell);

// s_l(k) = k h_l'(k) / h_l(k); s_{-1} = 0.
cplx s_ell_hankel(const WaveContext& ctx, int ell);
// Same quantity with extended exponent, so Im s_l survives when it is far
// below the double range (large l, small k).
WideComplex s_ell_hankel_wide(const WaveContext& ctx, int ell);
// s_l = -p_l/q_l + i k/q_l with exact integer alpha coefficients.
cplx s_ell_rational(const WaveContext& ctx, int ell);
// s_l = l - k h_{l+1}(k)/h_l(k).
cplx s_ell_diffform(const WaveContext& ctx, int ell);

// s_{-1..lmax}: element i holds s_{i-1}.
std::vector<cplx> s_sequence(const WaveContext& ctx, int lmax);

// Coefficients of q_l(k) = sum_m alpha_m x^m, x = 1/k^2, alpha_0 = 1, and
// p_l(k) = sum_m (m+1) alpha_m x^m. alpha_m = C(l+m, 2m) ((2m-1)!!)^2.
// Throws std::overflow_error for l > kMaxBesselDegree.
class RationalSData {
public:
  explicit RationalSData(int ell);

  int ell() const { return ell_; }
  // alpha_0..alpha_l as decimal strings (exact integers)
  const std::vector<std::string>& alpha_decimal() const { return alpha_str_; }
  double alpha(int m) const;

  cplx s(double k) const;
  // p_l(k)/q_l(k) - 1 and k/q_l(k), evaluated in 50-digit floating point
  // and narrowed; the sign of each is reliable even when the value is not.
  struct Margins {
    double real_margin;  // p/q - 1
    int real_sign;
    double imag;         // k/q
    int imag_sign;
  };
  Margins margins(double k) const;

private:
  struct Impl;
  int ell_;
  std::vector<std::string> alpha_str_;
  std::shared_ptr<const Impl> impl_;
};

// Eigenvalue table of one diagonal operator, built eagerly up to lmax.
class DiagonalOperator {
public:
  DiagonalOperator(WaveContext ctx, std::string label, std::vector<cplx> eig);

  const WaveContext& context() const { return ctx_; }
  const std::string& label() const { return label_; }
  int lmax() const { return static_cast<int>(eig_.size()) - 1; }
  cplx eigenvalue(int ell) const;

  CoeffField apply(const CoeffField& f) const;
  VectorCoeffField apply(const VectorCoeffField& f) const;
  // division by the eigenvalue; throws DegenerateOperator below `guard`
  CoeffField solve(const CoeffField& f, double guard = 1e-13) const;
  VectorCoeffField solve(const VectorCoeffField& f, double guard = 1e-13) const;

private:
  WaveContext ctx_;
  std::string label_;
  std::vector<cplx> eig_;
};

DiagonalOperator make_single_layer(const WaveContext& ctx, int lmax);
DiagonalOperator make_double_layer(const WaveContext& ctx, int lmax);
DiagonalOperator make_hypersingular(const WaveContext& ctx, int lmax);
DiagonalOperator make_D(const WaveContext& ctx, int lmax);
// Ncal(1/eta) for the given ctx
DiagonalOperator make_Ncal_inv(const WaveContext& ctx, int lmax);
DiagonalOperator make_Scal(const WaveContext& ctx, int lmax);

// One CSV row per degree: l,k,eta,re_s,im_s, then re/im of S,K,N,D,Ncal.
void write_operator_csv(std::ostream& os, const WaveContext& ctx, int lmax);

}  // namespace fobie
