#include "fobie/oracle.hpp"

#include <stdexcept>
#include <string>

#include "fobie/lift_ops.hpp"

namespace fobie::oracle {

// ---- singular quadrature ------------------------------------------------------

cplx quad_apply_layer(LayerKind kind, const CoeffField& density, double theta, double phi,
                      const WaveContext& ctx, int n_theta, int n_phi) {
  std::vector<double> xs, ws;
  gauss_legendre(n_theta, xs, ws);
  const Vec3 e3{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                std::cos(theta)};
  // e1 = theta-hat, e2 = phi-hat at x; any orthonormal completion works
  const Vec3 e1{std::cos(theta) * std::cos(phi), std::cos(theta) * std::sin(phi),
                -std::sin(theta)};
  const Vec3 e2{-std::sin(phi), std::cos(phi), 0.0};
  const double k = ctx.k;
  const double dphi = 2.0 * kPi / n_phi;

  cplx total{};
  for (int i = 0; i < n_theta; ++i) {
    const double tp = 0.5 * kPi * (xs[i] + 1.0);
    const double wt = 0.5 * kPi * ws[i];
    const double r = 2.0 * std::sin(0.5 * tp);
    const double c = std::cos(0.5 * tp);
    const cplx e = std::polar(1.0, k * r);
    const cplx kernel = kind == LayerKind::Single ? e * c / (4.0 * kPi)
                                                  : e * cplx(-1.0, k * r) * c / (8.0 * kPi);
    cplx ring{};
    for (int j = 0; j < n_phi; ++j) {
      const double pp = j * dphi;
      const double a = std::sin(tp) * std::cos(pp), b = std::sin(tp) * std::sin(pp),
                   z = std::cos(tp);
      const double y0 = a * e1[0] + b * e2[0] + z * e3[0];
      const double y1 = a * e1[1] + b * e2[1] + z * e3[1];
      const double y2 = a * e1[2] + b * e2[2] + z * e3[2];
      ring += synthesize(density, std::acos(std::clamp(y2, -1.0, 1.0)), std::atan2(y1, y0));
    }
    total += wt * dphi * kernel * ring;
  }
  return total;
}

// ---- dense matrices -------------------------------------------------------------

Eigen::VectorXcd pack(const VectorCoeffField& f, int lmax) {
  const int nb = (lmax + 1) * (lmax + 1);
  Eigen::VectorXcd v(static_cast<Eigen::Index>(f.size()) * nb);
  for (size_t c = 0; c < f.size(); ++c)
    for (int p = 0; p < nb; ++p)
      v(static_cast<Eigen::Index>(c) * nb + p) = f[c].get(HarmonicIndex::from_packed(p));
  return v;
}

VectorCoeffField unpack(const Eigen::VectorXcd& v, int ncomp, int lmax) {
  const int nb = (lmax + 1) * (lmax + 1);
  if (v.size() != static_cast<Eigen::Index>(ncomp) * nb)
    throw std::invalid_argument("unpack: vector length does not match layout");
  VectorCoeffField f(static_cast<size_t>(ncomp), lmax);
  for (int c = 0; c < ncomp; ++c)
    for (int p = 0; p < nb; ++p)
      f[c].at(HarmonicIndex::from_packed(p)) = v(static_cast<Eigen::Index>(c) * nb + p);
  return f;
}

namespace {

VectorCoeffField apply_operator(int formulation, DenseForm form, const SpectralOperators& ops,
                                const VectorCoeffField& x) {
  const auto& scal = ops.Scal();
  const cplx ieta = kI * ops.context().eta;
  if (formulation == 1) {
    const VectorCoeffField nn = times_normal(0.5 * dot_normal(x));
    if (form == DenseForm::Reduced) {
      const VectorCoeffField op = scal.apply(nn);
      return VectorCoeffField({x[0] + op[0], x[1] + op[1], x[2] + op[2]});
    }
    const VectorCoeffField dx = ops.D().apply(x);
    const VectorCoeffField op = ops.Ncal_inv().apply(nn);
    return VectorCoeffField({dx[0] + ieta * op[0], dx[1] + ieta * op[1], dx[2] + ieta * op[2]});
  }
  const VectorCoeffField x3({x[0], x[1], x[2]});
  if (form == DenseForm::Reduced) {
    // phi - Scal[u (v . phi)]
    const CoeffField vphi = x[3] - dot_normal(x3);
    const VectorCoeffField un = scal.apply(times_normal(vphi));
    std::vector<CoeffField> out;
    for (size_t j = 0; j < 3; ++j) out.push_back(x[j] - un[j]);
    out.push_back(x[3] - scal.apply(vphi));
    return VectorCoeffField(std::move(out));
  }
  // D M1 X - i eta Ncal [u X4]
  std::vector<CoeffField> m1(x3.begin(), x3.end());
  m1.push_back(x[3] + dot_normal(x3));
  const VectorCoeffField dm1 = ops.D().apply(VectorCoeffField(std::move(m1)));
  const VectorCoeffField nx = times_normal(x[3]);
  std::vector<CoeffField> ux(nx.begin(), nx.end());
  ux.push_back(x[3]);
  const VectorCoeffField nu = ops.Ncal_inv().apply(VectorCoeffField(std::move(ux)));
  std::vector<CoeffField> out;
  for (size_t j = 0; j < 4; ++j) out.push_back(dm1[j] - ieta * nu[j]);
  return VectorCoeffField(std::move(out));
}

}  // namespace

DenseOperatorMatrix dense_assemble(int formulation, const WaveContext& ctx, int lmax,
                                   DenseForm form) {
  if (formulation != 1 && formulation != 2)
    throw std::invalid_argument("dense_assemble: formulation must be 1 or 2");
  if (lmax < 0) throw std::invalid_argument("dense_assemble: lmax must be >= 0");
  DenseOperatorMatrix m;
  m.lmax = lmax;
  m.ncomp = formulation == 1 ? 3 : 4;
  const int nb = m.block();
  const Eigen::Index n = static_cast<Eigen::Index>(m.ncomp) * nb;
  m.a.resize(n, n);
  const SpectralOperators ops(ctx, lmax);
  for (int c = 0; c < m.ncomp; ++c)
    for (int p = 0; p < nb; ++p) {
      VectorCoeffField e(static_cast<size_t>(m.ncomp), lmax);
      e[c].at(HarmonicIndex::from_packed(p)) = 1.0;
      m.a.col(static_cast<Eigen::Index>(c) * nb + p) =
          pack(apply_operator(formulation, form, ops, e), lmax);
    }
  return m;
}

Eigen::MatrixXcd dense_Sn(const WaveContext& ctx, int lmax) {
  const int nb = (lmax + 1) * (lmax + 1);
  const DiagonalOperator scal = make_Scal(ctx, lmax + 2);
  Eigen::MatrixXcd a(nb, nb);
  for (int p = 0; p < nb; ++p) {
    const auto r = compare_Sn(scal, CoeffField::delta(lmax, HarmonicIndex::from_packed(p)));
    for (int q = 0; q < nb; ++q) a(q, p) = r.composite.get(HarmonicIndex::from_packed(q));
  }
  return a;
}

DenseSolve dense_solve(const DenseOperatorMatrix& m, const Eigen::VectorXcd& b) {
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m.a);
  DenseSolve s;
  s.x = lu.solve(b);
  const double bn = b.norm();
  s.residual = bn > 0.0 ? (m.a * s.x - b).norm() / bn : (m.a * s.x).norm();
  if (!(s.residual <= 1e-10))
    throw std::runtime_error("dense_solve: LU residual " + std::to_string(s.residual));
  return s;
}

ScatterSolution dense_scatter(const IncidentTraces& traces, const WaveContext& ctx,
                              int formulation, int lmax, DenseForm form) {
  const DenseOperatorMatrix m = dense_assemble(formulation, ctx, lmax, form);
  const SpectralOperators ops(ctx, std::max(lmax, traces.lmax()));
  VectorCoeffField rhs =
      formulation == 1 ? assemble_rhs_f1(traces, ops) : assemble_rhs_f2(traces, ops);
  if (form == DenseForm::Reduced) rhs = ops.D().solve(rhs);
  const VectorCoeffField x = unpack(dense_solve(m, pack(rhs, lmax)).x, m.ncomp, lmax);

  ScatterSolution sol{ctx, VectorCoeffField({x[0], x[1], x[2]}), CoeffField(lmax), 0.0};
  if (formulation == 1) {
    sol.En = -0.5 * dot_normal(sol.dn_Es);
    sol.En -= 0.5 * dot_normal(traces.dn_e);
    sol.En -= dot_normal(traces.e_trace);
  } else if (form == DenseForm::Reduced) {
    sol.En = x[3] - dot_normal(sol.dn_Es);
  } else {
    sol.En = x[3];
  }
  return sol;
}

// ---- multipoles ----------------------------------------------------------------

int MultipoleSpec::max_degree() const {
  int d = 0;
  for (const auto& t : terms) d = std::max(d, t.ell);
  return d;
}

namespace {

void check_spec(const MultipoleSpec& spec) {
  if (spec.terms.empty()) throw std::invalid_argument("multipole: spec has no terms");
  for (const auto& t : spec.terms)
    if (t.ell < 1 || std::abs(t.m) > t.ell || t.ell + 1 > kMaxBesselDegree)
      throw std::invalid_argument("multipole: term needs l >= 1 and |m| <= l");
}

// z_n(kr) for n = 0..nmax, z = h (outgoing) or j (regular)
std::vector<WideComplex> radial_sequence(int nmax, double z, Radial radial) {
  if (radial == Radial::Outgoing) return sph_hankel_h1_sequence(nmax, z);
  const auto j = sph_bessel_j_sequence(nmax, z);
  std::vector<WideComplex> out;
  for (const auto& v : j) out.emplace_back(v, WideReal(0.0));
  return out;
}

struct RadialValues {
  cplx z, dz;  // z_n(k r), d/dr z_n(k r)
};

// values and r-derivatives of z_n(kr) for n = 0..nmax
std::vector<RadialValues> radial_values(int nmax, double k, double r, Radial radial) {
  const auto z = radial_sequence(nmax + 1, k * r, radial);
  std::vector<RadialValues> out(static_cast<size_t>(nmax) + 1);
  for (int n = 0; n <= nmax; ++n) {
    // z_n' = (n/x) z_n - z_{n+1}
    const WideComplex dz = z[n] * WideReal(n / (k * r)) - z[n + 1];
    out[n] = {z[n].to_complex(), (dz * WideReal(k)).to_complex()};
  }
  return out;
}

void add(CoeffField& f, HarmonicIndex idx, cplx v) {
  if (idx.valid()) f.at(idx) += v;
}

}  // namespace

MultipoleTraces multipole_coefficients(const MultipoleSpec& spec, const WaveContext& ctx,
                                       int lmax, Radial radial) {
  check_spec(spec);
  if (lmax < spec.max_degree() + 1)
    throw std::invalid_argument("multipole: lmax must be at least max degree + 1");
  const auto rv = radial_values(spec.max_degree() + 1, ctx.k, 1.0, radial);
  MultipoleTraces out{VectorCoeffField(3, lmax), VectorCoeffField(3, lmax), CoeffField(lmax)};
  for (const auto& t : spec.terms) {
    const int l = t.ell, m = t.m;
    const HarmonicIndex idx{l, m};
    // T = grad_S Y x x-hat through angular-momentum ladders
    const double cp = std::sqrt(static_cast<double>((l - m) * (l + m + 1)));
    const double cm = std::sqrt(static_cast<double>((l + m) * (l - m + 1)));
    std::array<CoeffField, 3> T{CoeffField(lmax), CoeffField(lmax), CoeffField(lmax)};
    add(T[0], {l, m + 1}, cplx(0.0, -0.5) * cp);
    add(T[0], {l, m - 1}, cplx(0.0, -0.5) * cm);
    add(T[1], {l, m + 1}, -0.5 * cp);
    add(T[1], {l, m - 1}, 0.5 * cm);
    add(T[2], idx, cplx(0.0, -static_cast<double>(m)));

    for (int axis = 1; axis <= 3; ++axis) {
      CoeffField lo(lmax), hi(lmax);
      for (const auto& [tgt, c] : lift_coeffs(axis, idx)) (tgt.ell < l ? lo : hi).at(tgt) += c;
      const size_t j = axis - 1;
      const cplx ib = kI * t.b;
      out.e[j] += t.a * rv[l].z * T[j];
      out.e[j] += ib * (l + 1.0) * rv[l - 1].z * lo;
      out.e[j] += ib * static_cast<double>(l) * rv[l + 1].z * hi;
      out.dr_e[j] += t.a * rv[l].dz * T[j];
      out.dr_e[j] += ib * (l + 1.0) * rv[l - 1].dz * lo;
      out.dr_e[j] += ib * static_cast<double>(l) * rv[l + 1].dz * hi;
    }
    out.e_dot_x.at(idx) += kI / ctx.k * t.b * (l * (l + 1.0)) * rv[l].z;
  }
  return out;
}

ManufacturedProblem multipole_traces(const MultipoleSpec& spec, const WaveContext& ctx,
                                     int lmax) {
  const auto c = multipole_coefficients(spec, ctx, lmax, Radial::Outgoing);
  VectorCoeffField e_in(3, lmax), dn_in(3, lmax);
  for (size_t j = 0; j < 3; ++j) {
    e_in[j] = -1.0 * c.e[j];
    dn_in[j] = -1.0 * c.dr_e[j];
  }
  return {ScatterSolution{ctx, c.dr_e, c.e_dot_x, 0.0},
          IncidentTraces::from_trace(std::move(e_in), std::move(dn_in))};
}

ManufacturedProblem regular_incidence(const MultipoleSpec& incident, const WaveContext& ctx,
                                      int lmax, MultipoleSpec* scattered_out) {
  check_spec(incident);
  const auto h = radial_values(incident.max_degree() + 1, ctx.k, 1.0, Radial::Outgoing);
  const auto j = radial_values(incident.max_degree() + 1, ctx.k, 1.0, Radial::Regular);
  MultipoleSpec scattered;
  for (const auto& t : incident.terms) {
    const int l = t.ell;
    const cplx a = -t.a * j[l].z / h[l].z;
    const cplx b = -t.b * ((l + 1.0) * j[l - 1].z - static_cast<double>(l) * j[l + 1].z) /
                   ((l + 1.0) * h[l - 1].z - static_cast<double>(l) * h[l + 1].z);
    scattered.terms.push_back({l, t.m, a, b});
  }
  const auto in = multipole_coefficients(incident, ctx, lmax, Radial::Regular);
  const auto sc = multipole_coefficients(scattered, ctx, lmax, Radial::Outgoing);
  if (scattered_out) *scattered_out = scattered;
  return {ScatterSolution{ctx, sc.dr_e, sc.e_dot_x, 0.0},
          IncidentTraces::from_trace(in.e, in.dr_e)};
}

CVec3 multipole_field(const MultipoleSpec& spec, const WaveContext& ctx, double r, double theta,
                      double phi, Radial radial) {
  check_spec(spec);
  const double st = std::sin(theta), ct = std::cos(theta);
  if (st < 1e-8) throw std::domain_error("multipole_field: point on the polar axis");
  const Vec3 xh{st * std::cos(phi), st * std::sin(phi), ct};
  const Vec3 th{ct * std::cos(phi), ct * std::sin(phi), -st};
  const Vec3 ph{-std::sin(phi), std::cos(phi), 0.0};
  const auto rv = radial_values(spec.max_degree() + 1, ctx.k, r, radial);
  CVec3 out{};
  for (const auto& t : spec.terms) {
    const int l = t.ell, m = t.m;
    const cplx y = sph_harmonic({l, m}, theta, phi);
    const cplx yp = m + 1 <= l ? sph_harmonic({l, m + 1}, theta, phi) : cplx{};
    const cplx dth = m * ct / st * y +
                     std::sqrt(static_cast<double>((l - m) * (l + m + 1))) * std::polar(1.0, -phi) * yp;
    const cplx dph = kI * static_cast<double>(m) * y / st;
    for (size_t c = 0; c < 3; ++c) {
      const cplx grad = dth * th[c] + dph * ph[c];
      const cplx tvec = -dth * ph[c] + dph * th[c];
      const cplx ivec = grad + static_cast<double>(l) * y * xh[c];
      const cplx nvec = -grad + (l + 1.0) * y * xh[c];
      out[c] += t.a * rv[l].z * tvec +
                kI * t.b / (2.0 * l + 1.0) *
                    ((l + 1.0) * rv[l - 1].z * ivec + static_cast<double>(l) * rv[l + 1].z * nvec);
    }
  }
  return out;
}

namespace {

cplx complex_from_json(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  if (j.is_object()) return {j.value("re", 0.0), j.value("im", 0.0)};
  throw std::invalid_argument("multipole spec: complex value must be a number, [re, im] or {re, im}");
}

}  // namespace

MultipoleSpec multipole_spec_from_json(const nlohmann::json& j) {
  MultipoleSpec spec;
  const auto& terms = j.is_array() ? j : j.at("terms");
  for (const auto& t : terms)
    spec.terms.push_back({t.at("l").get<int>(), t.at("m").get<int>(),
                          complex_from_json(t.value("a", nlohmann::json(0.0))),
                          complex_from_json(t.value("b", nlohmann::json(0.0)))});
  check_spec(spec);
  return spec;
}

}  // namespace fobie::oracle
