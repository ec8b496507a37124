#include "fobie/harmonics.hpp"

#include <stdexcept>
#include <string>

#include "fobie/errors.hpp"

namespace fobie {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    // final derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = x;
    nodes[n - 1 - i] = -x;
    weights[i] = weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

QuadratureGrid::QuadratureGrid(int n_theta, int n_phi) : n_theta_(n_theta), n_phi_(n_phi) {
  if (n_theta < 1 || n_phi < 1) throw std::invalid_argument("QuadratureGrid: empty grid");
  gauss_legendre(n_theta, x_, w_);
  theta_.resize(n_theta);
  for (int i = 0; i < n_theta; ++i) theta_[i] = std::acos(x_[i]);
}

QuadratureGrid make_grid(int lmax) {
  if (lmax < 0) throw std::invalid_argument("make_grid: lmax must be >= 0");
  return {lmax + 1, 2 * lmax + 1};
}

// ---- CoeffField -----------------------------------------------------------

CoeffField::CoeffField(int lmax) : lmax_(lmax) {
  if (lmax < 0) throw std::invalid_argument("CoeffField: lmax must be >= 0");
  c_.assign(static_cast<size_t>((lmax + 1) * (lmax + 1)), cplx{});
}

CoeffField CoeffField::delta(int lmax, HarmonicIndex idx, cplx value) {
  CoeffField f(lmax);
  f.at(idx) = value;
  return f;
}

cplx CoeffField::operator[](HarmonicIndex idx) const {
  if (!idx.valid() || idx.ell > lmax_) throw std::out_of_range("CoeffField: index out of range");
  return c_[idx.packed()];
}

cplx& CoeffField::at(HarmonicIndex idx) {
  if (!idx.valid() || idx.ell > lmax_) throw std::out_of_range("CoeffField: index out of range");
  return c_[idx.packed()];
}

cplx CoeffField::get(HarmonicIndex idx) const {
  if (!idx.valid() || idx.ell > lmax_) return {};
  return c_[idx.packed()];
}

CoeffField CoeffField::resized(int lmax) const {
  CoeffField out(lmax);
  const size_t n = std::min(out.c_.size(), c_.size());
  std::copy_n(c_.begin(), n, out.c_.begin());
  return out;
}

double CoeffField::tail_norm2(int ell) const {
  double s = 0.0;
  const size_t start = static_cast<size_t>(std::max(0, (ell + 1) * (ell + 1)));
  for (size_t p = start; p < c_.size(); ++p) s += std::norm(c_[p]);
  return s;
}

double CoeffField::norm2() const { return tail_norm2(-1); }

double CoeffField::max_abs() const {
  double m = 0.0;
  for (const auto& v : c_) m = std::max(m, std::abs(v));
  return m;
}

CoeffField& CoeffField::operator+=(const CoeffField& o) {
  if (o.lmax_ > lmax_) *this = resized(o.lmax_);
  for (size_t p = 0; p < o.c_.size(); ++p) c_[p] += o.c_[p];
  return *this;
}

CoeffField& CoeffField::operator-=(const CoeffField& o) {
  if (o.lmax_ > lmax_) *this = resized(o.lmax_);
  for (size_t p = 0; p < o.c_.size(); ++p) c_[p] -= o.c_[p];
  return *this;
}

CoeffField& CoeffField::operator*=(cplx s) {
  for (auto& v : c_) v *= s;
  return *this;
}

double max_abs_diff(const CoeffField& a, const CoeffField& b) {
  const int lmax = std::max(a.lmax(), b.lmax());
  double m = 0.0;
  for (int p = 0; p < (lmax + 1) * (lmax + 1); ++p) {
    const auto idx = HarmonicIndex::from_packed(p);
    m = std::max(m, std::abs(a.get(idx) - b.get(idx)));
  }
  return m;
}

VectorCoeffField::VectorCoeffField(size_t ncomp, int lmax) : comps_(ncomp, CoeffField(lmax)) {}

VectorCoeffField::VectorCoeffField(std::vector<CoeffField> comps) : comps_(std::move(comps)) {
  if (comps_.empty()) return;
  int lmax = 0;
  for (const auto& c : comps_) lmax = std::max(lmax, c.lmax());
  for (auto& c : comps_)
    if (c.lmax() != lmax) c = c.resized(lmax);
}

VectorCoeffField VectorCoeffField::resized(int lmax) const {
  std::vector<CoeffField> out;
  out.reserve(comps_.size());
  for (const auto& c : comps_) out.push_back(c.resized(lmax));
  return VectorCoeffField(std::move(out));
}

double VectorCoeffField::norm2() const {
  double s = 0.0;
  for (const auto& c : comps_) s += c.norm2();
  return s;
}

double max_abs_diff(const VectorCoeffField& a, const VectorCoeffField& b) {
  if (a.size() != b.size()) throw std::invalid_argument("max_abs_diff: component count differs");
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, max_abs_diff(a[i], b[i]));
  return m;
}

// ---- transforms -----------------------------------------------------------

std::vector<cplx> sample(const SurfaceFunction& f, const QuadratureGrid& grid) {
  std::vector<cplx> out(grid.size());
  for (int i = 0; i < grid.n_theta(); ++i)
    for (int j = 0; j < grid.n_phi(); ++j) out[grid.node(i, j)] = f(grid.theta(i), grid.phi(j));
  return out;
}

CoeffField analyze(const SurfaceFunction& f, const QuadratureGrid& grid, int lmax,
                   int bandwidth) {
  const auto s = sample(f, grid);
  return analyze_samples(s, grid, lmax, bandwidth);
}

CoeffField analyze_samples(std::span<const cplx> samples, const QuadratureGrid& grid,
                           int lmax, int bandwidth) {
  if (samples.size() != grid.size())
    throw std::invalid_argument("analyze: sample count does not match grid");
  if (lmax + bandwidth > grid.exact_degree())
    throw GridTooSmall("analyze: grid exact to degree " + std::to_string(grid.exact_degree()) +
                       " but lmax + bandwidth = " + std::to_string(lmax + bandwidth));
  const int nphi = grid.n_phi();
  // e^{-i m phi_j}, m = 0..lmax
  std::vector<cplx> ephi(static_cast<size_t>(nphi) * (lmax + 1));
  for (int j = 0; j < nphi; ++j)
    for (int m = 0; m <= lmax; ++m) ephi[static_cast<size_t>(j) * (lmax + 1) + m] =
        std::polar(1.0, -m * grid.phi(j));

  CoeffField out(lmax);
  std::vector<cplx> fm(2 * static_cast<size_t>(lmax) + 1);
  for (int i = 0; i < grid.n_theta(); ++i) {
    std::fill(fm.begin(), fm.end(), cplx{});
    for (int j = 0; j < nphi; ++j) {
      const cplx v = samples[grid.node(i, j)];
      const cplx* e = &ephi[static_cast<size_t>(j) * (lmax + 1)];
      fm[lmax] += v;
      for (int m = 1; m <= lmax; ++m) {
        fm[lmax + m] += v * e[m];
        fm[lmax - m] += v * std::conj(e[m]);
      }
    }
    const double w = grid.weight(i);
    const auto p = normalized_legendre_table(lmax, grid.cos_theta(i));
    for (int l = 0; l <= lmax; ++l) {
      for (int m = -l; m <= l; ++m) {
        const int am = std::abs(m);
        double y = p[legendre_slot(l, am)];
        if (m < 0 && (am & 1)) y = -y;
        out.at({l, m}) += w * y * fm[lmax + m];
      }
    }
  }
  return out;
}

cplx synthesize(const CoeffField& c, double theta, double phi) {
  const auto y = sph_harmonic_all(c.lmax(), theta, phi);
  cplx s{};
  const auto d = c.data();
  for (size_t p = 0; p < d.size(); ++p) s += d[p] * y[p];
  return s;
}

std::vector<cplx> synthesize_on_grid(const CoeffField& c, const QuadratureGrid& grid) {
  const int lmax = c.lmax();
  const int nphi = grid.n_phi();
  std::vector<cplx> out(grid.size());
  std::vector<cplx> gm(2 * static_cast<size_t>(lmax) + 1);
  for (int i = 0; i < grid.n_theta(); ++i) {
    const auto p = normalized_legendre_table(lmax, grid.cos_theta(i));
    std::fill(gm.begin(), gm.end(), cplx{});
    for (int l = 0; l <= lmax; ++l)
      for (int m = -l; m <= l; ++m) {
        const int am = std::abs(m);
        double y = p[legendre_slot(l, am)];
        if (m < 0 && (am & 1)) y = -y;
        gm[lmax + m] += c[{l, m}] * y;
      }
    for (int j = 0; j < nphi; ++j) {
      cplx s{};
      for (int m = -lmax; m <= lmax; ++m) s += gm[lmax + m] * std::polar(1.0, m * grid.phi(j));
      out[grid.node(i, j)] = s;
    }
  }
  return out;
}

cplx integrate(std::span<const cplx> samples, const QuadratureGrid& grid) {
  if (samples.size() != grid.size())
    throw std::invalid_argument("integrate: sample count does not match grid");
  cplx s{};
  for (int i = 0; i < grid.n_theta(); ++i) {
    cplx row{};
    for (int j = 0; j < grid.n_phi(); ++j) row += samples[grid.node(i, j)];
    s += grid.weight(i) * row;
  }
  return s;
}

nlohmann::json to_json(const CoeffField& c) {
  nlohmann::json coeffs = nlohmann::json::array();
  const auto d = c.data();
  for (size_t p = 0; p < d.size(); ++p) {
    if (d[p] == cplx{}) continue;
    const auto idx = HarmonicIndex::from_packed(static_cast<int>(p));
    coeffs.push_back({{"l", idx.ell}, {"m", idx.m}, {"re", d[p].real()}, {"im", d[p].imag()}});
  }
  return {{"lmax", c.lmax()}, {"coeffs", coeffs}};
}

CoeffField coeff_field_from_json(const nlohmann::json& j) {
  CoeffField c(j.at("lmax").get<int>());
  for (const auto& e : j.at("coeffs")) {
    const HarmonicIndex idx{e.at("l").get<int>(), e.at("m").get<int>()};
    if (!idx.valid() || idx.ell > c.lmax())
      throw std::invalid_argument("coeff_field_from_json: index outside truncation");
    c.at(idx) = {e.at("re").get<double>(), e.at("im").get<double>()};
  }
  return c;
}

}  // namespace fobie
