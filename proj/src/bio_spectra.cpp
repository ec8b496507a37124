#include "fobie/bio_spectra.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "fobie/errors.hpp"

namespace fobie {

namespace mp = boost::multiprecision;
using big_float = mp::cpp_bin_float_50;

WaveContext::WaveContext(double k_, double eta_) : k(k_), eta(eta_) {
  if (!(k > 0.0) || !std::isfinite(k)) throw std::invalid_argument("WaveContext: k must be > 0");
  if (!(eta > 0.0) || !std::isfinite(eta))
    throw std::invalid_argument("WaveContext: eta must be > 0");
}

double default_eta(double k) { return std::max(1.0, k); }

namespace {

// j, j', h, h' at z = k for l = 0..lmax, all with extended exponent.
struct BesselTable {
  std::vector<WideReal> j, dj;
  std::vector<WideComplex> h, dh;
};

BesselTable bessel_table(int lmax, double z) {
  const auto j = sph_bessel_j_sequence(lmax + 1, z);
  const auto y = sph_bessel_y_sequence(lmax + 1, z);
  BesselTable t;
  t.j.assign(j.begin(), j.begin() + lmax + 1);
  t.dj.resize(lmax + 1);
  t.h.resize(lmax + 1);
  t.dh.resize(lmax + 1);
  for (int l = 0; l <= lmax; ++l) {
    t.dj[l] = WideReal(l / z) * j[l] - j[l + 1];
    const WideReal dy = l == 0 ? -y[1] : y[l - 1] - WideReal((l + 1.0) / z) * y[l];
    t.h[l] = {j[l], y[l]};
    t.dh[l] = {t.dj[l], dy};
  }
  return t;
}

struct LayerEigs {
  cplx S, K, N;
};

LayerEigs layer_eigs(const BesselTable& t, double k, int l) {
  const WideComplex ik(cplx(0.0, k));
  LayerEigs e;
  e.S = (ik * t.h[l] * t.j[l]).to_complex();
  e.K = -0.5 + ((ik * t.h[l] * t.dj[l]) * WideReal(k)).to_complex();
  e.N = ((ik * t.dh[l] * t.dj[l]) * WideReal(k * k)).to_complex();
  return e;
}

cplx D_from(const LayerEigs& e, double eta) { return 0.5 + e.K - kI * eta * e.S; }
cplx Ncal_from(const LayerEigs& e, double eta) { return 0.5 - e.K - kI * eta * e.N; }

cplx Scal_from(const LayerEigs& e, const WaveContext& ctx) {
  const cplx d = D_from(e, ctx.eta);
  if (std::abs(d) < 1e-14) throw DegenerateOperator("D(eta) eigenvalue vanishes");
  return kI * ctx.eta * Ncal_from(e, 1.0 / ctx.eta) / d;
}

void check_degree(int ell, int lo, const char* who) {
  if (ell < lo || ell > kMaxBesselDegree)
    throw std::domain_error(std::string(who) + ": degree out of range");
}

LayerEigs single_degree(const WaveContext& ctx, int ell, const char* who) {
  check_degree(ell, 0, who);
  return layer_eigs(bessel_table(ell, ctx.k), ctx.k, ell);
}

template <class F>
DiagonalOperator build(const WaveContext& ctx, int lmax, std::string label, F&& f) {
  if (lmax < 0 || lmax > kMaxBesselDegree)
    throw std::domain_error("diagonal operator: lmax out of range");
  const auto t = bessel_table(lmax, ctx.k);
  std::vector<cplx> eig(static_cast<size_t>(lmax) + 1);
  for (int l = 0; l <= lmax; ++l) eig[l] = f(layer_eigs(t, ctx.k, l));
  return {ctx, std::move(label), std::move(eig)};
}

}  // namespace

cplx eig_single_layer(const WaveContext& ctx, int ell) {
  return single_degree(ctx, ell, "eig_single_layer").S;
}
cplx eig_double_layer(const WaveContext& ctx, int ell) {
  return single_degree(ctx, ell, "eig_double_layer").K;
}
cplx eig_hypersingular(const WaveContext& ctx, int ell) {
  return single_degree(ctx, ell, "eig_hypersingular").N;
}
cplx eig_D(const WaveContext& ctx, int ell) {
  return D_from(single_degree(ctx, ell, "eig_D"), ctx.eta);
}
cplx eig_Ncal(const WaveContext& ctx, int ell) {
  return Ncal_from(single_degree(ctx, ell, "eig_Ncal"), ctx.eta);
}
cplx eig_Scal(const WaveContext& ctx, int ell) {
  return Scal_from(single_degree(ctx, ell, "eig_Scal"), ctx);
}

WideComplex s_ell_hankel_wide(const WaveContext& ctx, int ell) {
  check_degree(ell, -1, "s_ell_hankel");
  if (ell == -1) return WideComplex(cplx{});
  const auto t = bessel_table(ell, ctx.k);
  return t.dh[ell] * WideReal(ctx.k) / t.h[ell];
}

cplx s_ell_hankel(const WaveContext& ctx, int ell) {
  return s_ell_hankel_wide(ctx, ell).to_complex();
}

cplx s_ell_diffform(const WaveContext& ctx, int ell) {
  check_degree(ell, 0, "s_ell_diffform");
  const auto h = sph_hankel_h1_sequence(ell + 1, ctx.k);
  return cplx(ell) - (h[ell + 1] * WideReal(ctx.k) / h[ell]).to_complex();
}

std::vector<cplx> s_sequence(const WaveContext& ctx, int lmax) {
  if (lmax < 0 || lmax > kMaxBesselDegree) throw std::domain_error("s_sequence: lmax out of range");
  const auto t = bessel_table(lmax, ctx.k);
  std::vector<cplx> s(static_cast<size_t>(lmax) + 2);
  s[0] = 0.0;
  for (int l = 0; l <= lmax; ++l) s[l + 1] = (t.dh[l] * WideReal(ctx.k) / t.h[l]).to_complex();
  return s;
}

// ---- rational form ----------------------------------------------------------

struct RationalSData::Impl {
  std::vector<big_float> alpha;

  // q and p at x = 1/k^2 by Horner
  std::pair<big_float, big_float> qp(double k) const {
    const big_float x = big_float(1) / (big_float(k) * big_float(k));
    big_float q = 0, p = 0;
    for (size_t m = alpha.size(); m-- > 0;) {
      q = q * x + alpha[m];
      p = p * x + alpha[m] * static_cast<int>(m + 1);
    }
    return {q, p};
  }
};

RationalSData::RationalSData(int ell) : ell_(ell) {
  if (ell < 0) throw std::domain_error("RationalSData: degree must be >= 0");
  if (ell > kMaxBesselDegree)
    throw std::overflow_error("RationalSData: degree beyond the supported integer range");
  auto impl = std::make_shared<Impl>();
  mp::cpp_int binom = 1;  // C(l+m, 2m)
  mp::cpp_int dfact = 1;  // (2m-1)!!
  for (int m = 0; m <= ell; ++m) {
    const mp::cpp_int a = binom * dfact * dfact;
    alpha_str_.push_back(a.str());
    impl->alpha.emplace_back(a);
    binom = binom * (ell + m + 1) * (ell - m) / ((2 * m + 1) * (2 * m + 2));
    dfact *= 2 * m + 1;
  }
  impl_ = std::move(impl);
}

double RationalSData::alpha(int m) const {
  return impl_->alpha.at(static_cast<size_t>(m)).convert_to<double>();
}

cplx RationalSData::s(double k) const {
  if (!(k > 0.0)) throw std::domain_error("RationalSData::s: k must be > 0");
  const auto [q, p] = impl_->qp(k);
  const big_float re = -p / q;
  const big_float im = big_float(k) / q;
  return {re.convert_to<double>(), im.convert_to<double>()};
}

RationalSData::Margins RationalSData::margins(double k) const {
  if (!(k > 0.0)) throw std::domain_error("RationalSData::margins: k must be > 0");
  const auto [q, p] = impl_->qp(k);
  const big_float real_margin = p / q - 1;
  const big_float imag = big_float(k) / q;
  return {real_margin.convert_to<double>(), real_margin.sign(), imag.convert_to<double>(),
          imag.sign()};
}

cplx s_ell_rational(const WaveContext& ctx, int ell) {
  return RationalSData(ell).s(ctx.k);
}

// ---- DiagonalOperator -------------------------------------------------------

DiagonalOperator::DiagonalOperator(WaveContext ctx, std::string label, std::vector<cplx> eig)
    : ctx_(ctx), label_(std::move(label)), eig_(std::move(eig)) {}

cplx DiagonalOperator::eigenvalue(int ell) const {
  if (ell < 0 || ell > lmax())
    throw std::out_of_range(label_ + ": eigenvalue requested beyond table degree");
  return eig_[ell];
}

CoeffField DiagonalOperator::apply(const CoeffField& f) const {
  if (f.lmax() > lmax()) throw TruncationError(label_ + ": field degree exceeds table degree");
  CoeffField out = f;
  auto d = out.data();
  for (size_t p = 0; p < d.size(); ++p) d[p] *= eig_[HarmonicIndex::from_packed(static_cast<int>(p)).ell];
  return out;
}

VectorCoeffField DiagonalOperator::apply(const VectorCoeffField& f) const {
  std::vector<CoeffField> out;
  for (const auto& c : f) out.push_back(apply(c));
  return VectorCoeffField(std::move(out));
}

CoeffField DiagonalOperator::solve(const CoeffField& f, double guard) const {
  if (f.lmax() > lmax()) throw TruncationError(label_ + ": field degree exceeds table degree");
  for (int l = 0; l <= f.lmax(); ++l)
    if (std::abs(eig_[l]) < guard)
      throw DegenerateOperator(label_ + ": eigenvalue below guard at degree " + std::to_string(l));
  CoeffField out = f;
  auto d = out.data();
  for (size_t p = 0; p < d.size(); ++p) d[p] /= eig_[HarmonicIndex::from_packed(static_cast<int>(p)).ell];
  return out;
}

VectorCoeffField DiagonalOperator::solve(const VectorCoeffField& f, double guard) const {
  std::vector<CoeffField> out;
  for (const auto& c : f) out.push_back(solve(c, guard));
  return VectorCoeffField(std::move(out));
}

DiagonalOperator make_single_layer(const WaveContext& ctx, int lmax) {
  return build(ctx, lmax, "S", [](const LayerEigs& e) { return e.S; });
}
DiagonalOperator make_double_layer(const WaveContext& ctx, int lmax) {
  return build(ctx, lmax, "K", [](const LayerEigs& e) { return e.K; });
}
DiagonalOperator make_hypersingular(const WaveContext& ctx, int lmax) {
  return build(ctx, lmax, "N", [](const LayerEigs& e) { return e.N; });
}
DiagonalOperator make_D(const WaveContext& ctx, int lmax) {
  return build(ctx, lmax, "D", [&](const LayerEigs& e) { return D_from(e, ctx.eta); });
}
DiagonalOperator make_Ncal_inv(const WaveContext& ctx, int lmax) {
  return build(ctx, lmax, "Ncal(1/eta)",
               [&](const LayerEigs& e) { return Ncal_from(e, 1.0 / ctx.eta); });
}
DiagonalOperator make_Scal(const WaveContext& ctx, int lmax) {
  return build(ctx, lmax, "Scal", [&](const LayerEigs& e) { return Scal_from(e, ctx); });
}

void write_operator_csv(std::ostream& os, const WaveContext& ctx, int lmax) {
  const auto t = bessel_table(lmax, ctx.k);
  os << "l,k,eta,re_s,im_s,re_S,im_S,re_K,im_K,re_N,im_N,re_D,im_D,re_Ncal,im_Ncal\n";
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, ",%.15g", v);
    os << buf;
  };
  for (int l = 0; l <= lmax; ++l) {
    const auto e = layer_eigs(t, ctx.k, l);
    const cplx s = (t.dh[l] * WideReal(ctx.k) / t.h[l]).to_complex();
    const cplx d = D_from(e, ctx.eta);
    const cplx n = Ncal_from(e, ctx.eta);
    os << l;
    put(ctx.k);
    put(ctx.eta);
    for (const cplx& v : {s, e.S, e.K, e.N, d, n}) {
      put(v.real());
      put(v.imag());
    }
    os << '\n';
  }
}

}  // namespace fobie
