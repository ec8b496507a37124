#include "fobie/specfun.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fobie {

HarmonicIndex HarmonicIndex::from_packed(int p) {
  int ell = static_cast<int>(std::sqrt(static_cast<double>(p)));
  while (ell * ell > p) --ell;
  while ((ell + 1) * (ell + 1) <= p) ++ell;
  return {ell, p - ell * ell - ell};
}

namespace {

void check_argument(int ell, double z, const char* who) {
  if (!(z > 0.0) || !std::isfinite(z))
    throw std::domain_error(std::string(who) + ": argument must be positive and finite");
  if (ell < 0 || ell > kMaxBesselDegree)
    throw std::domain_error(std::string(who) + ": degree out of range [0, 500]");
}

double narrow(const WideReal& w, const char* who) {
  if (!w.fits_double()) {
    if (w.exponent() > 0) throw std::overflow_error(std::string(who) + ": value overflows double");
    throw std::underflow_error(std::string(who) + ": value underflows double");
  }
  return w.to_double();
}

cplx narrow(const WideComplex& w, const char* who) {
  // a component far below the other one is legitimately lost in a double
  // complex; only the dominant magnitude must be representable
  const WideReal mag = w.re.abs() < w.im.abs() ? w.im.abs() : w.re.abs();
  narrow(mag, who);
  return w.to_complex();
}

}  // namespace

std::vector<WideReal> sph_bessel_j_sequence(int lmax, double z) {
  check_argument(std::max(lmax, 0), z, "sph_bessel_j");
  const int start = std::max(lmax, static_cast<int>(std::ceil(z))) + 40 +
                    static_cast<int>(std::ceil(10.0 * std::cbrt(z)));
  std::vector<WideReal> f(static_cast<size_t>(start) + 2);
  f[start + 1] = WideReal(0.0);
  f[start] = WideReal(1.0);
  for (int n = start; n >= 1; --n)
    f[n - 1] = WideReal((2.0 * n + 1.0) / z) * f[n] - f[n + 1];

  const double j0 = std::sin(z) / z;
  const double j1 = std::sin(z) / (z * z) - std::cos(z) / z;
  const WideReal scale =
      std::fabs(j0) >= std::fabs(j1) ? WideReal(j0) / f[0] : WideReal(j1) / f[1];
  std::vector<WideReal> out(static_cast<size_t>(lmax) + 1);
  for (int n = 0; n <= lmax; ++n) out[n] = f[n] * scale;
  return out;
}

std::vector<WideReal> sph_bessel_y_sequence(int lmax, double z) {
  check_argument(std::max(lmax, 0), z, "sph_bessel_y");
  std::vector<WideReal> y(static_cast<size_t>(std::max(lmax, 1)) + 1);
  y[0] = WideReal(-std::cos(z) / z);
  y[1] = WideReal(-std::cos(z) / (z * z) - std::sin(z) / z);
  for (int n = 1; n < lmax; ++n)
    y[n + 1] = WideReal((2.0 * n + 1.0) / z) * y[n] - y[n - 1];
  y.resize(static_cast<size_t>(lmax) + 1);
  return y;
}

std::vector<WideComplex> sph_hankel_h1_sequence(int lmax, double z) {
  const auto j = sph_bessel_j_sequence(lmax, z);
  const auto y = sph_bessel_y_sequence(lmax, z);
  std::vector<WideComplex> h(j.size());
  for (size_t n = 0; n < j.size(); ++n) h[n] = WideComplex(j[n], y[n]);
  return h;
}

WideReal sph_bessel_j_wide(int ell, double z) {
  check_argument(ell, z, "sph_bessel_j");
  return sph_bessel_j_sequence(ell, z)[ell];
}

WideReal sph_bessel_j_deriv_wide(int ell, double z) {
  check_argument(ell, z, "sph_bessel_j_deriv");
  // j'_l = (l/z) j_l - j_{l+1}: no cancellation as z -> 0
  const auto j = sph_bessel_j_sequence(ell + 1, z);
  return WideReal(ell / z) * j[ell] - j[ell + 1];
}

WideComplex sph_hankel_h1_wide(int ell, double z) {
  check_argument(ell, z, "sph_hankel_h1");
  return sph_hankel_h1_sequence(ell, z)[ell];
}

WideComplex sph_hankel_h1_deriv_wide(int ell, double z) {
  check_argument(ell, z, "sph_hankel_h1_deriv");
  const auto y = sph_bessel_y_sequence(ell + 1, z);
  const WideReal dy = ell == 0 ? -y[1] : y[ell - 1] - WideReal((ell + 1.0) / z) * y[ell];
  return {sph_bessel_j_deriv_wide(ell, z), dy};
}

double sph_bessel_j(int ell, double z) {
  return narrow(sph_bessel_j_wide(ell, z), "sph_bessel_j");
}

double sph_bessel_j_deriv(int ell, double z) {
  return narrow(sph_bessel_j_deriv_wide(ell, z), "sph_bessel_j_deriv");
}

cplx sph_hankel_h1(int ell, double z) {
  return narrow(sph_hankel_h1_wide(ell, z), "sph_hankel_h1");
}

cplx sph_hankel_h1_deriv(int ell, double z) {
  return narrow(sph_hankel_h1_deriv_wide(ell, z), "sph_hankel_h1_deriv");
}

double assoc_legendre(int ell, int m, double x) {
  if (m < 0 || m > ell) throw std::domain_error("assoc_legendre: need 0 <= m <= l");
  if (!(std::fabs(x) <= 1.0)) throw std::domain_error("assoc_legendre: |x| must be <= 1");
  const double s = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));
  double pmm = 1.0;
  for (int i = 1; i <= m; ++i) pmm *= -(2.0 * i - 1.0) * s;
  if (ell == m) return pmm;
  double prev = pmm;
  double cur = x * (2.0 * m + 1.0) * pmm;
  for (int l = m + 2; l <= ell; ++l) {
    const double next = ((2.0 * l - 1.0) * x * cur - (l + m - 1.0) * prev) / (l - m);
    prev = cur;
    cur = next;
  }
  if (!std::isfinite(cur)) throw std::overflow_error("assoc_legendre: value overflows double");
  return cur;
}

std::vector<double> normalized_legendre_table(int lmax, double x) {
  if (!(std::fabs(x) <= 1.0)) throw std::domain_error("normalized_legendre_table: |x| > 1");
  std::vector<double> p(static_cast<size_t>(legendre_slot(lmax, lmax)) + 1, 0.0);
  const double s = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));
  double pmm = 1.0 / std::sqrt(4.0 * kPi);
  for (int m = 0; m <= lmax; ++m) {
    if (m > 0) pmm *= -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s;
    p[legendre_slot(m, m)] = pmm;
    if (m == lmax) break;
    double prev = pmm;
    double cur = x * std::sqrt(2.0 * m + 3.0) * pmm;
    p[legendre_slot(m + 1, m)] = cur;
    double a_prev = std::sqrt(2.0 * m + 3.0);
    for (int l = m + 2; l <= lmax; ++l) {
      const double a =
          std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(m) * m));
      const double next = a * (x * cur - prev / a_prev);
      p[legendre_slot(l, m)] = next;
      prev = cur;
      cur = next;
      a_prev = a;
    }
  }
  return p;
}

cplx sph_harmonic(HarmonicIndex idx, double theta, double phi) {
  if (!idx.valid()) throw std::domain_error("sph_harmonic: invalid (l, m)");
  const int am = std::abs(idx.m);
  const auto p = normalized_legendre_table(idx.ell, std::cos(theta));
  double v = p[legendre_slot(idx.ell, am)];
  if (idx.m < 0 && (am & 1)) v = -v;
  return v * std::polar(1.0, idx.m * phi);
}

std::vector<cplx> sph_harmonic_all(int lmax, double theta, double phi) {
  const auto p = normalized_legendre_table(lmax, std::cos(theta));
  std::vector<cplx> out(static_cast<size_t>((lmax + 1) * (lmax + 1)));
  for (int m = 0; m <= lmax; ++m) {
    const cplx e = std::polar(1.0, m * phi);
    const double sign = (m & 1) ? -1.0 : 1.0;
    for (int l = m; l <= lmax; ++l) {
      const double v = p[legendre_slot(l, m)];
      out[HarmonicIndex{l, m}.packed()] = v * e;
      if (m > 0) out[HarmonicIndex{l, -m}.packed()] = sign * v * std::conj(e);
    }
  }
  return out;
}

}  // namespace fobie
