#include "fobie/solver.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "fobie/errors.hpp"
#include "fobie/lift_ops.hpp"

namespace fobie {

namespace {

// s_{n,l} from s[i] = s_{i-1}
cplx sn_from(const std::vector<cplx>& s, int l) {
  if (l == 0) return s[2];
  const double w = 2.0 * l + 1.0;
  return l / w * s[l] + (l + 1) / w * s[l + 2];
}

}  // namespace

cplx lambda1(const WaveContext& ctx, int ell) {
  if (ell < 0) throw std::domain_error("lambda1: degree must be >= 0");
  return 1.0 + 0.5 * sn_from(s_sequence(ctx, ell + 1), ell);
}

cplx lambda2(const WaveContext& ctx, int ell) {
  if (ell < 0) throw std::domain_error("lambda2: degree must be >= 0");
  const auto s = s_sequence(ctx, ell + 1);
  return 1.0 + sn_from(s, ell) - s[ell + 1];
}

Formulation1Spectrum::Formulation1Spectrum(const WaveContext& ctx, int lmax) : ctx_(ctx) {
  const auto s = s_sequence(ctx, lmax + 1);
  lam_.resize(static_cast<size_t>(lmax) + 1);
  for (int l = 0; l <= lmax; ++l) lam_[l] = 1.0 + 0.5 * sn_from(s, l);
}

Formulation2Spectrum::Formulation2Spectrum(const WaveContext& ctx, int lmax) : ctx_(ctx) {
  const auto s = s_sequence(ctx, lmax + 1);
  lam_.resize(static_cast<size_t>(lmax) + 1);
  for (int l = 0; l <= lmax; ++l) lam_[l] = 1.0 + sn_from(s, l) - s[l + 1];
}

IncidentTraces IncidentTraces::from_trace(VectorCoeffField e_trace, VectorCoeffField dn_e) {
  if (e_trace.size() != 3 || dn_e.size() != 3)
    throw std::invalid_argument("IncidentTraces: need three components");
  const CoeffField en = dot_normal(e_trace);
  VectorCoeffField et = times_normal(en);
  for (size_t j = 0; j < 3; ++j) et[j] -= e_trace[j];
  const int lmax = std::max({et.lmax(), e_trace.lmax(), dn_e.lmax()});
  return {et.resized(lmax), dn_e.resized(lmax), e_trace.resized(lmax)};
}

SpectralOperators::SpectralOperators(const WaveContext& ctx, int lmax)
    : ctx_(ctx),
      lmax_(lmax),
      D_(make_D(ctx, std::min(lmax + kHeadroom, kMaxBesselDegree))),
      Ncal_(make_Ncal_inv(ctx, std::min(lmax + kHeadroom, kMaxBesselDegree))),
      Scal_(make_Scal(ctx, std::min(lmax + kHeadroom, kMaxBesselDegree))) {
  if (lmax < 0) throw std::invalid_argument("SpectralOperators: lmax must be >= 0");
}

VectorCoeffField assemble_rhs_f1(const IncidentTraces& traces, const SpectralOperators& ops) {
  const CoeffField dn_n = dot_normal(traces.dn_e);
  VectorCoeffField src = times_normal(0.5 * dn_n);
  for (size_t j = 0; j < 3; ++j) src[j] += traces.e_trace[j];
  const cplx c = -kI * ops.context().eta;
  VectorCoeffField rhs = ops.Ncal_inv().apply(src);
  for (size_t j = 0; j < 3; ++j) rhs[j] *= c;
  return rhs;
}

VectorCoeffField assemble_rhs_f2(const IncidentTraces& traces, const SpectralOperators& ops) {
  std::vector<CoeffField> src(traces.e_tangential.begin(), traces.e_tangential.end());
  src.push_back(dot_normal(traces.e_tangential));
  VectorCoeffField rhs = ops.Ncal_inv().apply(VectorCoeffField(std::move(src)));
  const cplx c = kI * ops.context().eta;
  for (size_t j = 0; j < 4; ++j) rhs[j] *= c;
  return rhs;
}

namespace {

CoeffField divide_by(const CoeffField& f, const DiagonalOperator& scal, bool second) {
  if (f.lmax() + 1 > scal.lmax()) throw TruncationError("solver: Scal table too short");
  CoeffField out = f;
  auto d = out.data();
  std::vector<cplx> lam(static_cast<size_t>(f.lmax()) + 1);
  for (int l = 0; l <= f.lmax(); ++l) {
    const cplx sn = sn_eigenvalue(scal, l);
    lam[l] = second ? 1.0 + sn - scal.eigenvalue(l) : 1.0 + 0.5 * sn;
    if (std::abs(lam[l]) < 1e-13)
      throw DegenerateOperator("solver: scalar eigenvalue below guard at degree " +
                               std::to_string(l));
  }
  for (size_t p = 0; p < d.size(); ++p) d[p] /= lam[HarmonicIndex::from_packed(static_cast<int>(p)).ell];
  return out;
}

double truncate(ScatterSolution& sol, int lmax) {
  double total = 0.0, tail = 0.0;
  for (const auto& c : sol.dn_Es) {
    total += c.norm2();
    tail += c.tail_norm2(lmax);
  }
  total += sol.En.norm2();
  tail += sol.En.tail_norm2(lmax);
  sol.dn_Es = sol.dn_Es.resized(lmax);
  sol.En = sol.En.resized(lmax);
  return total > 0.0 ? std::sqrt(tail / total) : 0.0;
}

}  // namespace

ScatterSolution solve_f1(const VectorCoeffField& rhs, const IncidentTraces& traces,
                         const SpectralOperators& ops) {
  if (rhs.size() != 3) throw std::invalid_argument("solve_f1: rhs needs three components");
  const auto& scal = ops.Scal();
  const VectorCoeffField f = ops.D().solve(rhs);
  const CoeffField psi_n = divide_by(dot_normal(f), scal, false);
  const VectorCoeffField corr = scal.apply(times_normal(0.5 * psi_n));
  VectorCoeffField psi = f;
  for (size_t j = 0; j < 3; ++j) psi[j] -= corr[j];
  psi = psi.resized(corr.lmax());

  CoeffField en = -0.5 * dot_normal(psi);
  en -= 0.5 * dot_normal(traces.dn_e);
  en -= dot_normal(traces.e_trace);

  ScatterSolution sol{ops.context(), std::move(psi), std::move(en), 0.0};
  sol.tail_rel = truncate(sol, traces.lmax() + 1);
  return sol;
}

ScatterSolution solve_f2(const VectorCoeffField& rhs, const IncidentTraces& traces,
                         const SpectralOperators& ops) {
  if (rhs.size() != 4) throw std::invalid_argument("solve_f2: rhs needs four components");
  const auto& scal = ops.Scal();
  const VectorCoeffField g = ops.D().solve(rhs);
  // g . v with v = (-x1, -x2, -x3, 1)
  CoeffField gv = g[3];
  gv -= dot_normal(VectorCoeffField({g[0], g[1], g[2]}));
  const CoeffField phi_v = divide_by(gv, scal, true);
  // phi = g + Scal[u phi_v], u = (n, x . n) and x . n = 1 on the sphere
  const VectorCoeffField un = scal.apply(times_normal(phi_v));
  std::vector<CoeffField> phi;
  for (size_t j = 0; j < 3; ++j) phi.push_back(g[j] + un[j]);
  phi.push_back(g[3] + scal.apply(phi_v));
  VectorCoeffField psi(std::vector<CoeffField>(phi.begin(), phi.begin() + 3));
  CoeffField en = phi[3] - dot_normal(psi);

  ScatterSolution sol{ops.context(), std::move(psi), std::move(en), 0.0};
  sol.tail_rel = truncate(sol, traces.lmax() + 1);
  return sol;
}

ScatterSolution scatter(const IncidentTraces& traces, const SpectralOperators& ops,
                        int formulation) {
  if (formulation == 1) return solve_f1(assemble_rhs_f1(traces, ops), traces, ops);
  if (formulation == 2) return solve_f2(assemble_rhs_f2(traces, ops), traces, ops);
  throw std::invalid_argument("scatter: formulation must be 1 or 2");
}

// ---- plane wave ---------------------------------------------------------------

namespace {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

}  // namespace

IncidentTraces plane_wave_traces(const Vec3& direction, const Vec3& polarization,
                                 const WaveContext& ctx, int lmax) {
  const Vec3& d = direction;
  const Vec3& p = polarization;
  if (std::fabs(std::sqrt(dot(d, d)) - 1.0) > 1e-12)
    throw std::invalid_argument("plane wave: direction must be a unit vector");
  if (std::fabs(std::sqrt(dot(p, p)) - 1.0) > 1e-12)
    throw std::invalid_argument("plane wave: polarization must be a unit vector");
  if (std::fabs(dot(p, d)) > 1e-12)
    throw std::invalid_argument("plane wave: polarization must be orthogonal to direction");
  if (lmax < 0) throw std::invalid_argument("plane wave: lmax must be >= 0");

  const double theta = std::acos(std::clamp(d[2], -1.0, 1.0));
  const double phi = std::atan2(d[1], d[0]);
  const auto y = sph_harmonic_all(lmax, theta, phi);
  const auto j = sph_bessel_j_sequence(lmax + 1, ctx.k);

  CoeffField scal(lmax), dscal(lmax);
  cplx il = 1.0;
  for (int l = 0; l <= lmax; ++l, il *= kI) {
    const cplx jl = j[l].to_double();
    const cplx djl = (WideReal(l / ctx.k) * j[l] - j[l + 1]).to_double() * ctx.k;
    for (int m = -l; m <= l; ++m) {
      const cplx base = 4.0 * kPi * il * std::conj(y[HarmonicIndex{l, m}.packed()]);
      scal.at({l, m}) = base * jl;
      dscal.at({l, m}) = base * djl;
    }
  }
  VectorCoeffField e(3, lmax), dn(3, lmax);
  for (size_t c = 0; c < 3; ++c) {
    e[c] = p[c] * scal;
    dn[c] = p[c] * dscal;
  }
  return IncidentTraces::from_trace(std::move(e), std::move(dn));
}

CVec3 plane_wave_field(const Vec3& direction, const Vec3& polarization, double k,
                       const Vec3& x) {
  const cplx ph = std::polar(1.0, k * dot(direction, x));
  return {polarization[0] * ph, polarization[1] * ph, polarization[2] * ph};
}

// ---- exterior evaluation -------------------------------------------------------

CVec3 evaluate_scattered(const ScatterSolution& sol, const IncidentTraces& traces, double r,
                         double theta, double phi) {
  if (!(r > 1.0)) throw std::domain_error("evaluate_scattered: point must satisfy r > 1");
  const double k = sol.ctx.k;
  // Dirichlet data E^s_j = n_j E_n + (E_t)_j
  VectorCoeffField dir = times_normal(sol.En);
  for (size_t j = 0; j < 3; ++j) dir[j] += traces.e_tangential[j];
  const int lmax = std::max(dir.lmax(), sol.dn_Es.lmax());
  if (lmax > kMaxBesselDegree) throw std::domain_error("evaluate_scattered: degree too high");

  const auto jk = sph_bessel_j_sequence(lmax + 1, k);
  const auto hr = sph_hankel_h1_sequence(lmax, k * r);
  const auto y = sph_harmonic_all(lmax, theta, phi);
  const WideComplex ik(cplx(0.0, k));
  CVec3 out{};
  for (int l = 0; l <= lmax; ++l) {
    const WideReal djl = WideReal(l / k) * jk[l] - jk[l + 1];
    const cplx dl = (ik * hr[l] * djl * WideReal(k)).to_complex();
    const cplx sl = (ik * hr[l] * jk[l]).to_complex();
    for (int m = -l; m <= l; ++m) {
      const HarmonicIndex idx{l, m};
      const cplx yv = y[idx.packed()];
      for (size_t c = 0; c < 3; ++c)
        out[c] += (dl * dir[c].get(idx) - sl * sol.dn_Es[c].get(idx)) * yv;
    }
  }
  return out;
}

double relative_coeff_error(const VectorCoeffField& a, const VectorCoeffField& b) {
  if (a.size() != b.size()) throw std::invalid_argument("relative_coeff_error: size mismatch");
  double diff = 0.0, scale = 0.0;
  for (size_t c = 0; c < a.size(); ++c) {
    diff = std::max(diff, max_abs_diff(a[c], b[c]));
    scale = std::max(scale, b[c].max_abs());
  }
  return scale > 0.0 ? diff / scale : diff;
}

nlohmann::json to_json(const ScatterSolution& sol) {
  nlohmann::json dn = nlohmann::json::array();
  for (const auto& c : sol.dn_Es) dn.push_back(to_json(c));
  return {{"k", sol.ctx.k},
          {"eta", sol.ctx.eta},
          {"dn_Es", dn},
          {"En", to_json(sol.En)},
          {"tail_rel", sol.tail_rel}};
}

void write_spectrum_csv(std::ostream& os, const WaveContext& ctx, int lmax) {
  const auto s = s_sequence(ctx, lmax + 1);
  os << "l,re_s,im_s,re_lambda1,im_lambda1,re_lambda2,im_lambda2,abs_lambda1,"
        "abs_lambda2_minus_1,l_abs_lambda2_minus_1\n";
  char buf[512];
  for (int l = 0; l <= lmax; ++l) {
    const cplx sn = sn_from(s, l);
    const cplx l1 = 1.0 + 0.5 * sn;
    const cplx l2 = 1.0 + sn - s[l + 1];
    std::snprintf(buf, sizeof buf, "%d,%.15g,%.15g,%.15g,%.15g,%.15g,%.15g,%.15g,%.15g,%.15g\n", l,
                  s[l + 1].real(), s[l + 1].imag(), l1.real(), l1.imag(), l2.real(), l2.imag(),
                  std::abs(l1), std::abs(l2 - 1.0), l * std::abs(l2 - 1.0));
    os << buf;
  }
}

}  // namespace fobie
