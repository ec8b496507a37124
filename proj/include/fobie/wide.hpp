#pragma once

// Extended-exponent floating point used by the spherical Bessel/Hankel
// recurrences. Values are stored as mantissa * 2^exponent with the mantissa
// kept in [0.5, 1) so that j_l(z) ~ 1e-1300 or y_l(z) ~ 1e+1300 stay finite.

#include <cmath>
#include <complex>
#include <cstdint>

namespace fobie {

class WideReal {
public:
  WideReal() = default;
  WideReal(double v) { set(v, 0); }  // NOLINT(google-explicit-constructor)
  WideReal(double mantissa, std::int64_t exponent) { set(mantissa, exponent); }

  double mantissa() const { return m_; }
  std::int64_t exponent() const { return e_; }
  bool is_zero() const { return m_ == 0.0; }
  int sign() const { return (m_ > 0) - (m_ < 0); }

  // Converts to double; overflow gives +-inf and underflow gives 0 (or a
  // subnormal), callers decide what that means.
  double to_double() const;
  bool fits_double() const;
  // log10 |x|; -inf for zero
  double log10_abs() const;

  WideReal operator-() const { return {-m_, e_}; }
  WideReal abs() const { return {std::fabs(m_), e_}; }

  friend WideReal operator*(const WideReal& a, const WideReal& b) {
    return {a.m_ * b.m_, a.e_ + b.e_};
  }
  friend WideReal operator/(const WideReal& a, const WideReal& b) {
    return {a.m_ / b.m_, a.e_ - b.e_};
  }
  friend WideReal operator+(const WideReal& a, const WideReal& b);
  friend WideReal operator-(const WideReal& a, const WideReal& b) { return a + (-b); }
  WideReal& operator+=(const WideReal& o) { return *this = *this + o; }
  WideReal& operator-=(const WideReal& o) { return *this = *this - o; }
  WideReal& operator*=(const WideReal& o) { return *this = *this * o; }
  WideReal& operator/=(const WideReal& o) { return *this = *this / o; }

  friend bool operator<(const WideReal& a, const WideReal& b) { return (a - b).sign() < 0; }
  friend bool operator>(const WideReal& a, const WideReal& b) { return b < a; }

private:
  void set(double mantissa, std::int64_t exponent);

  double m_ = 0.0;
  std::int64_t e_ = 0;
};

struct WideComplex {
  WideReal re;
  WideReal im;

  WideComplex() = default;
  WideComplex(WideReal r, WideReal i) : re(r), im(i) {}
  WideComplex(std::complex<double> z) : re(z.real()), im(z.imag()) {}  // NOLINT

  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
  bool fits_double() const { return re.fits_double() && im.fits_double(); }
  WideComplex conj() const { return {re, -im}; }
  WideReal norm() const { return re * re + im * im; }  // |z|^2

  friend WideComplex operator+(const WideComplex& a, const WideComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend WideComplex operator-(const WideComplex& a, const WideComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend WideComplex operator*(const WideComplex& a, const WideComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend WideComplex operator*(const WideComplex& a, const WideReal& s) {
    return {a.re * s, a.im * s};
  }
  friend WideComplex operator/(const WideComplex& a, const WideComplex& b) {
    const WideReal d = b.norm();
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
};

}  // namespace fobie
