// Acceptance gate: one PASS/FAIL line per criterion, sub-check residuals
// indented underneath. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "fobie/verify.hpp"

using namespace fobie::verify;

namespace {

struct Criterion {
  int id;
  std::string title;
  double limit_s;
  std::function<Report()> run;
};

bool run_criterion(const Criterion& c) {
  const auto t0 = std::chrono::steady_clock::now();
  Report r;
  std::string error;
  try {
    r = c.run();
  } catch (const std::exception& e) {
    error = e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs <= c.limit_s;
  const bool ok = error.empty() && all_passed(r) && in_time;

  std::printf("AC%d %s  %s  [%.1f s / %.0f s]\n", c.id, ok ? "PASS" : "FAIL", c.title.c_str(), secs,
              c.limit_s);
  for (const auto& x : r) {
    const char* tag = x.informational ? "info" : x.passed ? "ok" : "VIOLATED";
    std::printf("      %-8s %s  residual=%.3e", tag, x.name.c_str(), x.residual);
    if (x.tolerance > 0.0 && x.tolerance < 1e300) std::printf("  tol=%.0e", x.tolerance);
    if (!x.detail.empty()) std::printf("  (%s)", x.detail.c_str());
    std::printf("\n");
  }
  if (!error.empty()) std::printf("      error: %s\n", error.c_str());
  if (!in_time) std::printf("      over the time limit\n");
  std::fflush(stdout);
  return ok;
}

}  // namespace

int main() {
  const std::vector<Criterion> all{
      {1, "lift coefficients vs quadrature, all axes, l <= 25, tol 1e-11", 60,
       [] { return Report{lift_quadrature_gate(25)}; }},
      {2, "composite Sn matrix diagonal, lmax 12, k in {0.5, 1, 5}", 30,
       [] { return sn_diagonalization({0.5, 1.0, 5.0}, 12); }},
      {3, "lambda1, lambda2 nonzero and -Re s_l > 1, Im s_l > 0; l <= 400, 60 k in [1e-2, 1e2]",
       60, [] { return nonvanishing(log_grid(1e-2, 1e2, 60), 400); }},
      {4, "lambda1 growth at l = 200 and lambda2 clustering, k = 1", 10,
       [] { return asymptotics(1.0); }},
      {5, "layer quadrature (l <= 10, k <= 5, 120x240), Calderon and s recursion (l <= 200)", 120,
       [] {
         Report r = layer_quadrature({0.5, 1.0, 2.5, 5.0}, 10, 120, 240);
         const Report c = calderon_and_recursion({0.1, 1.0, 5.0, 20.0}, 200);
         r.insert(r.end(), c.begin(), c.end());
         return r;
       }},
      {6, "manufactured 3-term multipole, both formulations, exterior at r = 2", 30,
       [] { return manufactured(1.0); }},
      {7, "plane wave F1 vs F2 (k = 1, lmax 40), diagonal vs dense LU (lmax 10)", 60,
       [] { return cross_formulation(1.0, 40, 10); }},
      {8, "hankel, rational and difference forms of s_l, l <= 150", 10,
       [] { return Report{three_forms({0.1, 1.0, 5.0, 20.0}, 150)}; }},
  };

  int failed = 0;
  for (const auto& c : all)
    if (!run_criterion(c)) ++failed;
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
