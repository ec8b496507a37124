#include "fobie/wide.hpp"

#include <cfloat>
#include <limits>

namespace fobie {

void WideReal::set(double mantissa, std::int64_t exponent) {
  if (mantissa == 0.0 || !std::isfinite(mantissa)) {
    m_ = mantissa;
    e_ = 0;
    return;
  }
  int shift = 0;
  m_ = std::frexp(mantissa, &shift);
  e_ = exponent + shift;
}

double WideReal::to_double() const {
  if (m_ == 0.0) return 0.0;
  if (e_ > DBL_MAX_EXP) return m_ > 0 ? std::numeric_limits<double>::infinity()
                                      : -std::numeric_limits<double>::infinity();
  if (e_ < DBL_MIN_EXP - DBL_MANT_DIG - 1) return 0.0;
  return std::ldexp(m_, static_cast<int>(e_));
}

bool WideReal::fits_double() const {
  // normalised doubles only: mantissa in [0.5, 1) so 2^(DBL_MIN_EXP-1) is the smallest
  return m_ == 0.0 || (e_ <= DBL_MAX_EXP && e_ >= DBL_MIN_EXP);
}

double WideReal::log10_abs() const {
  if (m_ == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log10(std::fabs(m_)) + static_cast<double>(e_) * 0.30102999566398119521;
}

WideReal operator+(const WideReal& a, const WideReal& b) {
  if (a.m_ == 0.0) return b;
  if (b.m_ == 0.0) return a;
  const std::int64_t d = a.e_ - b.e_;
  if (d > 120) return a;
  if (d < -120) return b;
  if (d >= 0) return {a.m_ + std::ldexp(b.m_, static_cast<int>(-d)), a.e_};
  return {std::ldexp(a.m_, static_cast<int>(d)) + b.m_, b.e_};
}

}  // namespace fobie
