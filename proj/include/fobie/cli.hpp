#pragma once

// fobie command-line front end. run() is the whole program minus main(), so
// tests drive it in-process.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fobie/solver.hpp"

namespace fobie::cli {

enum ExitCode { kOk = 0, kFailure = 1, kUsage = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::optional<double> k;
  std::optional<double> k_min, k_max;
  int k_count = 0;
  std::optional<double> eta;
  std::optional<int> lmax;
  std::string formulation = "both";  // 1, 2, both
  std::string incident;              // planewave, multipole
  Vec3 dir{0, 0, 1};
  Vec3 pol{1, 0, 0};
  std::string multipole_file;
  std::string out;
  std::string format;  // csv, json, text; empty = command default
  bool quick = false;
  std::optional<double> tol;
  std::string inject_fault;

  // Throws UsageError naming the violated condition.
  void validate() const;
  double eta_or_default(double kk) const { return eta ? *eta : default_eta(kk); }
  // Log-spaced grid from k-min/k-max/k-count, or {k}.
  std::vector<double> k_grid() const;
};

// Parses argv (argv[0] is the program name). Applies --config JSON for
// keys not given as flags. Throws UsageError.
RunConfig parse_args(int argc, const char* const* argv);

int cmd_spectrum(const RunConfig& c, std::ostream& out);
int cmd_verify(const RunConfig& c, std::ostream& out);
int cmd_solve(const RunConfig& c, std::ostream& out);
int cmd_sweep(const RunConfig& c, std::ostream& out);

// Worker count for sweeps: FOBIE_THREADS if set and positive, else the
// hardware concurrency.
unsigned worker_count();

// Full program: parse, dispatch, map exceptions to exit codes. Results go to
// `out` unless --out names a file; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fobie::cli
