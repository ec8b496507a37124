#include "fobie/lift_ops.hpp"

#include <stdexcept>
#include <string>

#include "fobie/errors.hpp"

namespace fobie {

namespace {

void check_axis(int axis) {
  if (axis < 1 || axis > 3) throw std::invalid_argument("lift: axis must be 1, 2 or 3");
}

void push(std::vector<LiftTerm>& out, HarmonicIndex t, cplx c) {
  if (t.valid() && c != cplx{}) out.emplace_back(t, c);
}

double ratio_sqrt(double num, double den) { return num <= 0.0 ? 0.0 : std::sqrt(num / den); }

}  // namespace

std::vector<LiftTerm> lift_coeffs(int axis, HarmonicIndex idx) {
  check_axis(axis);
  if (!idx.valid()) throw std::invalid_argument("lift_coeffs: invalid (l, m)");
  const double l = idx.ell, m = idx.m;
  const HarmonicIndex dn_m{idx.ell - 1, idx.m}, up_m{idx.ell + 1, idx.m};
  std::vector<LiftTerm> out;
  if (axis == 3) {
    push(out, dn_m, ratio_sqrt(l * l - m * m, (2 * l - 1) * (2 * l + 1)));
    push(out, up_m, ratio_sqrt((l + 1) * (l + 1) - m * m, (2 * l + 1) * (2 * l + 3)));
    return out;
  }
  // sin(theta) e^{+i phi} Y_l^m and sin(theta) e^{-i phi} Y_l^m
  const double p_up = -ratio_sqrt((l + m + 1) * (l + m + 2), (2 * l + 1) * (2 * l + 3));
  const double p_dn = ratio_sqrt((l - m) * (l - m - 1), (2 * l - 1) * (2 * l + 1));
  const double m_up = ratio_sqrt((l - m + 1) * (l - m + 2), (2 * l + 1) * (2 * l + 3));
  const double m_dn = -ratio_sqrt((l + m) * (l + m - 1), (2 * l - 1) * (2 * l + 1));
  // x1 = (e+ + e-)/2 sin, x2 = -(i/2)(e+ - e-) sin
  const cplx wp = axis == 1 ? cplx(0.5) : cplx(0.0, -0.5);
  const cplx wm = axis == 1 ? cplx(0.5) : cplx(0.0, 0.5);
  push(out, {idx.ell - 1, idx.m - 1}, wm * m_dn);
  push(out, {idx.ell - 1, idx.m + 1}, wp * p_dn);
  push(out, {idx.ell + 1, idx.m - 1}, wm * m_up);
  push(out, {idx.ell + 1, idx.m + 1}, wp * p_up);
  return out;
}

std::vector<LiftTerm> lift_coeffs_printed(int axis, HarmonicIndex idx) {
  check_axis(axis);
  if (!idx.valid()) throw std::invalid_argument("lift_coeffs_printed: invalid (l, m)");
  const int L = idx.ell, M = idx.m;
  const double l = L, m = M;
  std::vector<LiftTerm> out;
  if (L >= 1 && M == L) {
    const double a = std::sqrt(2 * l) / std::sqrt(2 * l + 1);
    const double b = std::sqrt(2.0) / std::sqrt((2 * l + 1) * (2 * l + 3));
    const double c = std::sqrt(2 * l + 2) / std::sqrt(2 * l + 3);
    if (axis == 3) {
      push(out, {L + 1, L}, 1.0 / std::sqrt(2 * l + 3));
      return out;
    }
    const cplx u = axis == 1 ? cplx(0.5) : cplx(0.0, 0.5);
    push(out, {L - 1, L - 1}, -u * a);
    push(out, {L + 1, L - 1}, u * b);
    push(out, {L + 1, L + 1}, -u * c);
    return out;
  }
  const double dn = std::sqrt(l * l - 0.25);
  const double up = std::sqrt((l + 1) * (l + 1) - 0.25);
  auto dn_ok = [&](int mm) { return HarmonicIndex{L - 1, mm}.valid(); };
  if (axis == 3) {
    if (dn_ok(M)) push(out, {L - 1, M}, 0.5 * std::sqrt(l * l - m * m) / dn);
    push(out, {L + 1, M}, 0.5 * std::sqrt((l + 1) * (l + 1) - m * m) / up);
    return out;
  }
  const cplx u = axis == 1 ? cplx(0.25) : cplx(0.0, 0.25);
  const double sign_dp = axis == 1 ? 1.0 : -1.0;
  if (dn_ok(M - 1)) push(out, {L - 1, M - 1}, -u * std::sqrt((l + m) * (l + m - 1)) / dn);
  if (dn_ok(M + 1)) push(out, {L - 1, M + 1}, sign_dp * u * std::sqrt((l - m) * (l - m - 1)) / dn);
  push(out, {L + 1, M - 1}, u * std::sqrt((l - m + 1) * (l - m + 2)) / up);
  push(out, {L + 1, M + 1}, -u * std::sqrt((l + m + 1) * (l + m + 2)) / up);
  return out;
}

LiftTable::LiftTable(int lmax, bool inject_sign_fault) : lmax_(lmax) {
  if (lmax < 0) throw std::invalid_argument("LiftTable: lmax must be >= 0");
  const int np = (lmax + 1) * (lmax + 1);
  terms_.resize(3 * static_cast<size_t>(np));
  for (int axis = 1; axis <= 3; ++axis)
    for (int p = 0; p < np; ++p) {
      auto t = lift_coeffs(axis, HarmonicIndex::from_packed(p));
      if (inject_sign_fault && axis == 1 && !t.empty()) t.front().second = -t.front().second;
      terms_[static_cast<size_t>(axis - 1) * np + p] = std::move(t);
    }
}

const std::vector<LiftTerm>& LiftTable::entries(int axis, HarmonicIndex idx) const {
  check_axis(axis);
  if (!idx.valid() || idx.ell > lmax_) throw std::out_of_range("LiftTable: index beyond table");
  const int np = (lmax_ + 1) * (lmax_ + 1);
  return terms_[static_cast<size_t>(axis - 1) * np + idx.packed()];
}

namespace {

const LiftTable& shared_table() {
  static const LiftTable table(96);
  return table;
}

}  // namespace

CoeffField apply_lift(int axis, const CoeffField& f, const LiftTable& table) {
  if (f.lmax() > table.lmax()) throw std::out_of_range("apply_lift: field exceeds table degree");
  CoeffField out(f.lmax() + 1);
  const auto d = f.data();
  for (size_t p = 0; p < d.size(); ++p) {
    if (d[p] == cplx{}) continue;
    for (const auto& [t, c] : table.entries(axis, HarmonicIndex::from_packed(static_cast<int>(p))))
      out.at(t) += c * d[p];
  }
  return out;
}

CoeffField apply_lift(int axis, const CoeffField& f) {
  if (f.lmax() <= shared_table().lmax()) return apply_lift(axis, f, shared_table());
  check_axis(axis);
  CoeffField out(f.lmax() + 1);
  const auto d = f.data();
  for (size_t p = 0; p < d.size(); ++p) {
    if (d[p] == cplx{}) continue;
    for (const auto& [t, c] : lift_coeffs(axis, HarmonicIndex::from_packed(static_cast<int>(p))))
      out.at(t) += c * d[p];
  }
  return out;
}

CoeffField dot_normal(const VectorCoeffField& v) {
  if (v.size() != 3) throw std::invalid_argument("dot_normal: need three components");
  CoeffField out = apply_lift(1, v[0]);
  out += apply_lift(2, v[1]);
  out += apply_lift(3, v[2]);
  return out;
}

VectorCoeffField times_normal(const CoeffField& f) {
  return VectorCoeffField({apply_lift(1, f), apply_lift(2, f), apply_lift(3, f)});
}

cplx sn_eigenvalue(const DiagonalOperator& scal, int ell) {
  if (ell == 0) return scal.eigenvalue(1);
  const double w = 2.0 * ell + 1.0;
  return ell / w * scal.eigenvalue(ell - 1) + (ell + 1) / w * scal.eigenvalue(ell + 1);
}

CoeffField apply_Sn(const DiagonalOperator& scal, const CoeffField& f) {
  if (f.lmax() + 1 > scal.lmax())
    throw TruncationError("apply_Sn: Scal table must reach degree lmax + 1");
  std::vector<cplx> sn(static_cast<size_t>(f.lmax()) + 1);
  for (int l = 0; l <= f.lmax(); ++l) sn[l] = sn_eigenvalue(scal, l);
  CoeffField out = f;
  auto d = out.data();
  for (size_t p = 0; p < d.size(); ++p) d[p] *= sn[HarmonicIndex::from_packed(static_cast<int>(p)).ell];
  return out;
}

namespace {

CoeffField composite_full(const DiagonalOperator& scal, const CoeffField& f) {
  CoeffField out(f.lmax() + 2);
  for (int axis = 1; axis <= 3; ++axis)
    out += apply_lift(axis, scal.apply(apply_lift(axis, f)));
  return out;
}

double tail_ratio(const CoeffField& full, int lmax) {
  const double total = full.norm2();
  return total > 0.0 ? std::sqrt(full.tail_norm2(lmax) / total) : 0.0;
}

}  // namespace

CoeffField apply_Sn_composite(const DiagonalOperator& scal, const CoeffField& f,
                              double tail_tol) {
  const CoeffField full = composite_full(scal, f);
  const double tail = tail_ratio(full, f.lmax());
  if (tail > tail_tol)
    throw TruncationError("apply_Sn_composite: relative tail mass " + std::to_string(tail) +
                          " above degree " + std::to_string(f.lmax()));
  return full.resized(f.lmax());
}

SnComparison compare_Sn(const DiagonalOperator& scal, const CoeffField& f) {
  SnComparison r;
  const CoeffField full = composite_full(scal, f);
  r.tail_rel = tail_ratio(full, f.lmax());
  r.composite = full.resized(f.lmax());
  r.direct = apply_Sn(scal, f);
  r.discrepancy = max_abs_diff(r.direct, r.composite);
  return r;
}

}  // namespace fobie
