#pragma once

// Quadrature on the unit sphere and spherical-harmonic transforms.

#include <algorithm>
#include <functional>
#include <span>
#include <vector>

#include "fobie/specfun.hpp"
#include "json.hpp"

namespace fobie {

// Gauss-Legendre in cos(theta) times uniform azimuth. The grid integrates
// exactly every polynomial of total degree <= exact_degree() on S^2.
class QuadratureGrid {
public:
  QuadratureGrid(int n_theta, int n_phi);

  int n_theta() const { return n_theta_; }
  int n_phi() const { return n_phi_; }
  size_t size() const { return static_cast<size_t>(n_theta_) * n_phi_; }
  int exact_degree() const { return std::min(2 * n_theta_ - 1, n_phi_ - 1); }

  double theta(int i) const { return theta_[i]; }
  double cos_theta(int i) const { return x_[i]; }
  double phi(int j) const { return 2.0 * kPi * j / n_phi_; }
  // full weight of node (i, j), sum over all nodes = 4 pi
  double weight(int i) const { return w_[i] * 2.0 * kPi / n_phi_; }
  size_t node(int i, int j) const { return static_cast<size_t>(i) * n_phi_ + j; }

private:
  int n_theta_;
  int n_phi_;
  std::vector<double> x_, w_, theta_;
};

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Grid integrating Y_l^m conj(Y_l'^m') exactly for l, l' <= lmax.
QuadratureGrid make_grid(int lmax);

// Truncated expansion sum c_{l,m} Y_l^m, packed by HarmonicIndex::packed().
class CoeffField {
public:
  CoeffField() : CoeffField(0) {}
  explicit CoeffField(int lmax);
  static CoeffField delta(int lmax, HarmonicIndex idx, cplx value = 1.0);

  int lmax() const { return lmax_; }
  cplx operator[](HarmonicIndex idx) const;
  cplx& at(HarmonicIndex idx);
  // zero for indices above lmax
  cplx get(HarmonicIndex idx) const;

  std::span<const cplx> data() const { return c_; }
  std::span<cplx> data() { return c_; }

  // copy with truncation degree changed (padding with zeros or dropping)
  CoeffField resized(int lmax) const;
  // sum |c|^2 over degrees > ell
  double tail_norm2(int ell) const;
  double norm2() const;
  double max_abs() const;

  CoeffField& operator+=(const CoeffField& o);
  CoeffField& operator-=(const CoeffField& o);
  CoeffField& operator*=(cplx s);
  friend CoeffField operator+(CoeffField a, const CoeffField& b) { return a += b; }
  friend CoeffField operator-(CoeffField a, const CoeffField& b) { return a -= b; }
  friend CoeffField operator*(cplx s, CoeffField a) { return a *= s; }

private:
  int lmax_;
  std::vector<cplx> c_;
};

// Max |a - b| over the union of the two index ranges.
double max_abs_diff(const CoeffField& a, const CoeffField& b);

// Three Cartesian components (or four for the augmented system).
class VectorCoeffField {
public:
  VectorCoeffField() = default;
  VectorCoeffField(size_t ncomp, int lmax);
  explicit VectorCoeffField(std::vector<CoeffField> comps);

  size_t size() const { return comps_.size(); }
  int lmax() const { return comps_.empty() ? -1 : comps_.front().lmax(); }
  const CoeffField& operator[](size_t i) const { return comps_[i]; }
  CoeffField& operator[](size_t i) { return comps_[i]; }
  auto begin() const { return comps_.begin(); }
  auto end() const { return comps_.end(); }

  VectorCoeffField resized(int lmax) const;
  double norm2() const;

private:
  std::vector<CoeffField> comps_;
};

double max_abs_diff(const VectorCoeffField& a, const VectorCoeffField& b);

using SurfaceFunction = std::function<cplx(double theta, double phi)>;

// Samples f at every grid node, layout grid.node(i, j).
std::vector<cplx> sample(const SurfaceFunction& f, const QuadratureGrid& grid);

// coeffs[l,m] = int f conj(Y_l^m) ds. `bandwidth` is the declared degree of
// f; GridTooSmall is thrown unless lmax + bandwidth <= grid.exact_degree().
CoeffField analyze(const SurfaceFunction& f, const QuadratureGrid& grid, int lmax,
                   int bandwidth);
CoeffField analyze_samples(std::span<const cplx> samples, const QuadratureGrid& grid,
                           int lmax, int bandwidth);

cplx synthesize(const CoeffField& c, double theta, double phi);
// Values at every grid node, layout grid.node(i, j).
std::vector<cplx> synthesize_on_grid(const CoeffField& c, const QuadratureGrid& grid);

// Integral of a sampled function over the sphere.
cplx integrate(std::span<const cplx> samples, const QuadratureGrid& grid);

// {"lmax": n, "coeffs": [{"l":..,"m":..,"re":..,"im":..}, ...]}; zero
// coefficients are omitted.
nlohmann::json to_json(const CoeffField& c);
CoeffField coeff_field_from_json(const nlohmann::json& j);

}  // namespace fobie
