#pragma once

// Invariant suites shared by `fobie verify` and the acceptance binary.
// Each check carries its measured residual and the tolerance it was held to.

#include <string>
#include <vector>

#include "json.hpp"

namespace fobie::verify {

struct CheckResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
  // reported only; never fails a run
  bool informational = false;
};

using Report = std::vector<CheckResult>;

struct Options {
  double k = 1.0;
  bool quick = false;
  bool inject_lift_fault = false;
};

// Lift coefficients against quadrature inner products, l <= lmax, all axes.
CheckResult lift_quadrature_gate(int lmax, bool inject_fault = false);
// Count of entries where the as-printed coefficient table disagrees.
CheckResult lift_printed_form(int lmax);
// coeff of Y' in x Y == conj(coeff of Y in x Y')
CheckResult lift_hermitian(int lmax);

// Composite Sn matrix is diagonal with the closed-form diagonal.
Report sn_diagonalization(const std::vector<double>& ks, int lmax);

// Nonvanishing of lambda1/lambda2 and the sign inequalities on s_l.
Report nonvanishing(const std::vector<double>& ks, int lmax);

// Growth of lambda1 and clustering of lambda2 at fixed k.
Report asymptotics(double k);

// Quadrature oracle against the S and K eigenvalues.
Report layer_quadrature(const std::vector<double>& ks, int lmax, int n_theta, int n_phi);
Report calderon_and_recursion(const std::vector<double>& ks, int lmax);
CheckResult eta_independence(double k);
CheckResult three_forms(const std::vector<double>& ks, int lmax);

// Manufactured multipole solves, exterior evaluation and trace identities.
Report manufactured(double k);
// Regular multipole incidence against closed-form sphere coefficients.
Report regular_incidence_check(double k);
// Plane-wave cross-formulation and dense LU agreement.
Report cross_formulation(double k, int lmax_plane_wave, int lmax_dense);

Report run_all(const Options& opts);

bool all_passed(const Report& r);
nlohmann::json to_json(const Report& r);
std::string format_line(const CheckResult& c);

std::vector<double> log_grid(double lo, double hi, int n);

}  // namespace fobie::verify
