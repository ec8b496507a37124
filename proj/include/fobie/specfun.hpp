#pragma once

// Spherical Bessel/Hankel functions of real positive argument, associated
// Legendre functions and orthonormal spherical harmonics.
//
// Conventions:
//   P_l^m(x) = (-1)^m (1-x^2)^{m/2} d^m/dx^m P_l(x)        (Condon-Shortley)
//   Y_l^m    = gamma_l^m e^{i m phi} P_l^m(cos theta),  m >= 0
//   Y_l^-m   = (-1)^m conj(Y_l^m)
// with gamma_l^m = sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!).

#include <complex>
#include <vector>

#include "fobie/wide.hpp"

namespace fobie {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};
inline constexpr int kMaxBesselDegree = 500;

struct HarmonicIndex {
  int ell = 0;
  int m = 0;

  bool valid() const { return ell >= 0 && m >= -ell && m <= ell; }
  // packed position l^2 + l + m
  int packed() const { return ell * ell + ell + m; }
  static HarmonicIndex from_packed(int p);

  friend bool operator==(const HarmonicIndex&, const HarmonicIndex&) = default;
  friend auto operator<=>(const HarmonicIndex&, const HarmonicIndex&) = default;
};

// ---- spherical Bessel family --------------------------------------------

// j_0..j_lmax at z > 0 by normalised downward (Miller) recurrence.
std::vector<WideReal> sph_bessel_j_sequence(int lmax, double z);
// y_0..y_lmax at z > 0 by upward recurrence.
std::vector<WideReal> sph_bessel_y_sequence(int lmax, double z);
// h_l = j_l + i y_l for l = 0..lmax; real and imaginary parts keep
// independent exponents so Re h_l = j_l stays accurate when y_l dominates.
std::vector<WideComplex> sph_hankel_h1_sequence(int lmax, double z);

WideReal sph_bessel_j_wide(int ell, double z);
WideReal sph_bessel_j_deriv_wide(int ell, double z);
WideComplex sph_hankel_h1_wide(int ell, double z);
WideComplex sph_hankel_h1_deriv_wide(int ell, double z);

// Double-precision front ends. Throw std::domain_error for z <= 0 or
// ell outside [0, kMaxBesselDegree], std::overflow_error/std::underflow_error
// when the value is not representable as a normalised double.
double sph_bessel_j(int ell, double z);
double sph_bessel_j_deriv(int ell, double z);
cplx sph_hankel_h1(int ell, double z);
cplx sph_hankel_h1_deriv(int ell, double z);

// ---- Legendre / harmonics ----------------------------------------------

// Unnormalised P_l^m(x), 0 <= m <= l, |x| <= 1.
double assoc_legendre(int ell, int m, double x);

// Orthonormal gamma_l^m P_l^m(x) for all 0 <= m <= l <= lmax, packed as
// l(l+1)/2 + m.
std::vector<double> normalized_legendre_table(int lmax, double x);
inline int legendre_slot(int ell, int m) { return ell * (ell + 1) / 2 + m; }

cplx sph_harmonic(HarmonicIndex idx, double theta, double phi);

// All Y_l^m(theta, phi) for l <= lmax, packed by HarmonicIndex::packed().
std::vector<cplx> sph_harmonic_all(int lmax, double theta, double phi);

}  // namespace fobie
