#include "fobie/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "fobie/errors.hpp"
#include "fobie/oracle.hpp"
#include "fobie/verify.hpp"

namespace fobie::cli {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

void require(bool ok, const std::string& msg) {
  if (!ok) throw UsageError("invalid config: " + msg);
}

std::string format_of(const RunConfig& c, const char* fallback) {
  return c.format.empty() ? fallback : c.format;
}

nlohmann::json cjson(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

}  // namespace

void RunConfig::validate() const {
  static const std::vector<std::string> commands{"spectrum", "verify", "solve", "sweep"};
  require(std::find(commands.begin(), commands.end(), command) != commands.end(),
          "unknown command '" + command + "' (spectrum|verify|solve|sweep)");
  if (k) require(std::isfinite(*k) && *k > 0.0, "k must be > 0 (got " + num(*k) + ")");
  if (eta) require(std::isfinite(*eta) && *eta > 0.0, "eta must be > 0 (got " + num(*eta) + ")");
  if (lmax)
    require(*lmax >= 1 && *lmax <= kMaxBesselDegree - 2,
            "lmax must be in [1, " + std::to_string(kMaxBesselDegree - 2) + "] (got " +
                std::to_string(*lmax) + ")");
  require(formulation == "1" || formulation == "2" || formulation == "both",
          "formulation must be 1, 2 or both");
  require(format.empty() || format == "csv" || format == "json" ||
              (format == "text" && command == "verify"),
          "format must be csv or json" + std::string(command == "verify" ? " or text" : ""));
  require(inject_fault.empty() || inject_fault == "lift", "inject-fault accepts only 'lift'");
  if (tol) require(*tol > 0.0, "tol must be > 0");

  if (command == "spectrum" || command == "solve") require(k.has_value(), "--k is required");
  if (command == "sweep") {
    if (!k) {
      require(k_min && k_max, "sweep needs --k or --k-min/--k-max/--k-count");
      require(k_count >= 1, "k-grid is empty (k-count must be >= 1)");
      require(*k_min > 0.0 && *k_max >= *k_min, "k-grid needs 0 < k-min <= k-max");
    }
  }
  if (command == "solve") {
    require(!incident.empty(), "solve needs an incident field (--incident planewave|multipole)");
    require(incident == "planewave" || incident == "multipole",
            "incident must be planewave or multipole");
    if (incident == "planewave") {
      require(std::abs(norm3(dir) - 1.0) <= 1e-12, "dir must be a unit vector");
      require(std::abs(norm3(pol) - 1.0) <= 1e-12, "pol must be a unit vector");
      const double pd = dir[0] * pol[0] + dir[1] * pol[1] + dir[2] * pol[2];
      require(std::abs(pd) <= 1e-12, "plane-wave pol must be perpendicular to dir");
    } else {
      require(!multipole_file.empty(), "incident multipole needs --multipole-file");
    }
  }
}

std::vector<double> RunConfig::k_grid() const {
  if (k) return {*k};
  return verify::log_grid(*k_min, *k_max, k_count);
}

RunConfig parse_args(int argc, const char* const* argv) {
  RunConfig c;
  CLI::App app{"fobie: field-only PEC scattering on the unit sphere"};
  std::string config_path;
  std::vector<double> dir, pol;
  double k = 0, kmin = 0, kmax = 0, eta = 0, tol = 0;
  int lmax = 0;

  app.add_option("command", c.command, "spectrum | verify | solve | sweep")->required();
  auto* o_k = app.add_option("--k", k, "wavenumber");
  auto* o_kmin = app.add_option("--k-min", kmin);
  auto* o_kmax = app.add_option("--k-max", kmax);
  auto* o_kcount = app.add_option("--k-count", c.k_count, "log-spaced grid size");
  auto* o_eta = app.add_option("--eta", eta, "coupling, default max(1, k)");
  auto* o_lmax = app.add_option("--lmax", lmax);
  auto* o_form = app.add_option("--formulation", c.formulation, "1, 2 or both");
  auto* o_inc = app.add_option("--incident", c.incident, "planewave | multipole");
  auto* o_dir = app.add_option("--dir", dir, "plane-wave direction")->expected(3);
  auto* o_pol = app.add_option("--pol", pol, "plane-wave polarization")->expected(3);
  auto* o_mp = app.add_option("--multipole-file", c.multipole_file);
  auto* o_out = app.add_option("--out", c.out, "output file (default stdout)");
  auto* o_fmt = app.add_option("--format", c.format, "csv | json (verify also: text)");
  auto* o_quick = app.add_flag("--quick", c.quick, "verify: reduced suite");
  auto* o_tol = app.add_option("--tol", tol, "solve: cross-formulation tolerance");
  auto* o_fault = app.add_option("--inject-fault", c.inject_fault, "verify: 'lift'");
  app.add_option("--config", config_path, "JSON config; flags take precedence");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (o_k->count()) c.k = k;
  if (o_kmin->count()) c.k_min = kmin;
  if (o_kmax->count()) c.k_max = kmax;
  if (o_eta->count()) c.eta = eta;
  if (o_lmax->count()) c.lmax = lmax;
  if (o_tol->count()) c.tol = tol;
  if (o_dir->count()) c.dir = {dir[0], dir[1], dir[2]};
  if (o_pol->count()) c.pol = {pol[0], pol[1], pol[2]};

  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw UsageError("cannot read config file " + config_path);
    nlohmann::json j;
    try {
      in >> j;
      auto take = [&](const char* key, CLI::Option* opt, auto& dst) {
        if (j.contains(key) && opt->count() == 0) dst = j.at(key).get<std::decay_t<decltype(dst)>>();
      };
      auto take_opt = [&](const char* key, CLI::Option* opt, auto& dst) {
        if (j.contains(key) && opt->count() == 0)
          dst = j.at(key).get<typename std::decay_t<decltype(dst)>::value_type>();
      };
      take_opt("k", o_k, c.k);
      take_opt("k-min", o_kmin, c.k_min);
      take_opt("k-max", o_kmax, c.k_max);
      take("k-count", o_kcount, c.k_count);
      take_opt("eta", o_eta, c.eta);
      take_opt("lmax", o_lmax, c.lmax);
      if (j.contains("formulation") && o_form->count() == 0) {
        const auto& f = j.at("formulation");
        c.formulation = f.is_number() ? std::to_string(f.get<int>()) : f.get<std::string>();
      }
      take("incident", o_inc, c.incident);
      take("dir", o_dir, c.dir);
      take("pol", o_pol, c.pol);
      take("multipole-file", o_mp, c.multipole_file);
      take("out", o_out, c.out);
      take("format", o_fmt, c.format);
      take("quick", o_quick, c.quick);
      take_opt("tol", o_tol, c.tol);
      take("inject-fault", o_fault, c.inject_fault);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("bad config file " + config_path + ": " + e.what());
    }
  }
  c.validate();
  return c;
}

// ---- spectrum -------------------------------------------------------------------

int cmd_spectrum(const RunConfig& c, std::ostream& out) {
  const double k = *c.k;
  const WaveContext ctx(k, c.eta_or_default(k));
  const int lmax = c.lmax.value_or(50);
  if (format_of(c, "csv") == "csv") {
    write_spectrum_csv(out, ctx, lmax);
    return kOk;
  }
  const Formulation1Spectrum f1(ctx, lmax);
  const Formulation2Spectrum f2(ctx, lmax);
  const auto s = s_sequence(ctx, lmax);
  nlohmann::json rows = nlohmann::json::array();
  for (int l = 0; l <= lmax; ++l) {
    const cplx l2m1 = f2.lambda2(l) - 1.0;
    rows.push_back({{"l", l},
                    {"s", cjson(s[l + 1])},
                    {"lambda1", cjson(f1.lambda1(l))},
                    {"lambda2", cjson(f2.lambda2(l))},
                    {"abs_lambda1", std::abs(f1.lambda1(l))},
                    {"abs_lambda2_minus_1", std::abs(l2m1)},
                    {"l_abs_lambda2_minus_1", l * std::abs(l2m1)}});
  }
  out << nlohmann::json{{"k", k}, {"eta", ctx.eta}, {"lmax", lmax}, {"rows", rows}}.dump(2)
      << "\n";
  return kOk;
}

// ---- verify ---------------------------------------------------------------------

int cmd_verify(const RunConfig& c, std::ostream& out) {
  verify::Options o;
  o.k = c.k.value_or(1.0);
  o.quick = c.quick;
  o.inject_lift_fault = c.inject_fault == "lift";
  const verify::Report r = verify::run_all(o);
  const std::string f = format_of(c, "text");
  if (f == "json") {
    out << verify::to_json(r).dump(2) << "\n";
  } else if (f == "csv") {
    out << "name,status,residual,tolerance\n";
    for (const auto& x : r)
      out << x.name << "," << (x.informational ? "info" : x.passed ? "pass" : "fail") << ","
          << num(x.residual) << "," << num(x.tolerance) << "\n";
  } else {
    for (const auto& x : r) out << verify::format_line(x) << "\n";
    const auto nfail = std::count_if(r.begin(), r.end(), [](const verify::CheckResult& x) {
      return !x.passed && !x.informational;
    });
    out << (nfail == 0 ? "all checks passed" : std::to_string(nfail) + " check(s) failed")
        << "\n";
  }
  return verify::all_passed(r) ? kOk : kFailure;
}

// ---- solve ----------------------------------------------------------------------

int cmd_solve(const RunConfig& c, std::ostream& out) {
  const double k = *c.k;
  const WaveContext ctx(k, c.eta_or_default(k));
  const double tol = c.tol.value_or(1e-8);

  IncidentTraces traces;
  std::optional<ScatterSolution> exact;
  nlohmann::json incident;
  int requested = c.lmax.value_or(40);
  if (c.incident == "planewave") {
    traces = plane_wave_traces(c.dir, c.pol, ctx, requested);
    incident = {{"type", "planewave"},
                {"dir", {c.dir[0], c.dir[1], c.dir[2]}},
                {"pol", {c.pol[0], c.pol[1], c.pol[2]}}};
  } else {
    std::ifstream in(c.multipole_file);
    if (!in) throw UsageError("cannot read multipole file " + c.multipole_file);
    oracle::MultipoleSpec spec;
    try {
      spec = oracle::multipole_spec_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("bad multipole file: ") + e.what());
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("bad multipole file: ") + e.what());
    }
    if (spec.terms.empty()) throw UsageError("bad multipole file: no terms");
    const int lm = c.lmax.value_or(spec.max_degree() + 1);
    if (lm < spec.max_degree() + 1)
      throw UsageError("invalid config: lmax must be >= " + std::to_string(spec.max_degree() + 1) +
                       " for this multipole");
    requested = lm;
    auto mp = oracle::multipole_traces(spec, ctx, lm);
    traces = std::move(mp.traces);
    exact = std::move(mp.exact);
    incident = {{"type", "multipole"}, {"file", c.multipole_file}};
  }

  const SpectralOperators ops(ctx, traces.lmax());
  std::vector<std::pair<int, ScatterSolution>> sols;
  if (c.formulation != "2") sols.emplace_back(1, scatter(traces, ops, 1));
  if (c.formulation != "1") sols.emplace_back(2, scatter(traces, ops, 2));

  auto rel_en = [](const CoeffField& a, const CoeffField& b) {
    const double s = b.max_abs();
    return max_abs_diff(a, b) / (s > 0.0 ? s : 1.0);
  };
  nlohmann::json diag{{"tolerance", tol}};
  bool ok = true;
  double tail = 0.0;
  for (const auto& [f, s] : sols) tail = std::max(tail, s.tail_rel);
  diag["tail_rel"] = tail;
  if (sols.size() == 2) {
    const double d = std::max(relative_coeff_error(sols[0].second.dn_Es, sols[1].second.dn_Es),
                              rel_en(sols[0].second.En, sols[1].second.En));
    diag["cross_formulation_diff"] = d;
    ok = ok && d <= tol;
  }
  if (exact) {
    double e = 0.0;
    for (const auto& [f, s] : sols)
      e = std::max({e, relative_coeff_error(s.dn_Es, exact->dn_Es), rel_en(s.En, exact->En)});
    diag["coefficient_error"] = e;
    ok = ok && e <= tol;
  }
  diag["passed"] = ok;

  if (format_of(c, "json") == "json") {
    nlohmann::json sj = nlohmann::json::object();
    for (const auto& [f, s] : sols) sj["F" + std::to_string(f)] = to_json(s);
    out << nlohmann::json{{"k", k},
                          {"eta", ctx.eta},
                          {"lmax", requested},
                          {"trace_lmax", traces.lmax()},
                          {"incident", incident},
                          {"solutions", sj},
                          {"diagnostics", diag}}
               .dump(2)
        << "\n";
  } else {
    out << "formulation,field,l,m,re,im\n";
    for (const auto& [f, s] : sols) {
      auto rows = [&, f = f](const std::string& name, const CoeffField& cf) {
        for (int p = 0; p < (cf.lmax() + 1) * (cf.lmax() + 1); ++p) {
          const HarmonicIndex idx = HarmonicIndex::from_packed(p);
          const cplx v = cf[idx];
          out << f << "," << name << "," << idx.ell << "," << idx.m << "," << num(v.real())
              << "," << num(v.imag()) << "\n";
        }
      };
      for (int j = 0; j < 3; ++j) rows("dnE" + std::to_string(j + 1), s.dn_Es[j]);
      rows("En", s.En);
    }
  }
  return ok ? kOk : kFailure;
}

// ---- sweep ----------------------------------------------------------------------

unsigned worker_count() {
  if (const char* e = std::getenv("FOBIE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(e, &end, 10);
    if (end != e && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct SweepRow {
  double k = 0, eta = 0;
  double min_l1 = 0, min_l2 = 0;
  int argmin_l1 = 0, argmin_l2 = 0;
  double max_cluster = NAN;  // max l|lambda2 - 1| over l >= 50
  double min_re_gap = 0;     // min over l >= 1 of -Re s_l - 1
};

SweepRow sweep_row(double k, double eta, int lmax) {
  const WaveContext ctx(k, eta);
  const Formulation1Spectrum f1(ctx, lmax);
  const Formulation2Spectrum f2(ctx, lmax);
  const auto s = s_sequence(ctx, lmax);
  SweepRow r{k, eta, INFINITY, INFINITY, 0, 0, NAN, INFINITY};
  for (int l = 0; l <= lmax; ++l) {
    const double a = std::abs(f1.lambda1(l)), b = std::abs(f2.lambda2(l));
    if (a < r.min_l1) r.min_l1 = a, r.argmin_l1 = l;
    if (b < r.min_l2) r.min_l2 = b, r.argmin_l2 = l;
    if (l >= 50) {
      const double v = l * std::abs(f2.lambda2(l) - 1.0);
      r.max_cluster = std::isnan(r.max_cluster) ? v : std::max(r.max_cluster, v);
    }
    if (l >= 1) r.min_re_gap = std::min(r.min_re_gap, -s[l + 1].real() - 1.0);
  }
  return r;
}

}  // namespace

int cmd_sweep(const RunConfig& c, std::ostream& out) {
  const std::vector<double> ks = c.k_grid();
  const int lmax = c.lmax.value_or(200);
  std::vector<SweepRow> rows(ks.size());
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto work = [&] {
    for (size_t i; (i = next++) < ks.size();) {
      try {
        rows[i] = sweep_row(ks[i], c.eta_or_default(ks[i]), lmax);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned n = std::min<unsigned>(worker_count(), static_cast<unsigned>(ks.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  if (format_of(c, "csv") == "json") {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& r : rows)
      a.push_back({{"k", r.k},
                   {"eta", r.eta},
                   {"min_abs_lambda1", r.min_l1},
                   {"argmin_lambda1", r.argmin_l1},
                   {"min_abs_lambda2", r.min_l2},
                   {"argmin_lambda2", r.argmin_l2},
                   {"max_l_abs_lambda2_minus_1",
                    std::isnan(r.max_cluster) ? nlohmann::json() : nlohmann::json(r.max_cluster)},
                   {"min_neg_re_s_minus_1", r.min_re_gap}});
    out << nlohmann::json{{"lmax", lmax}, {"rows", a}}.dump(2) << "\n";
    return kOk;
  }
  out << "k,eta,lmax,min_abs_lambda1,argmin_lambda1,min_abs_lambda2,argmin_lambda2,"
         "max_l_abs_lambda2_minus_1,min_neg_re_s_minus_1\n";
  for (const auto& r : rows)
    out << num(r.k) << "," << num(r.eta) << "," << lmax << "," << num(r.min_l1) << ","
        << r.argmin_l1 << "," << num(r.min_l2) << "," << r.argmin_l2 << ","
        << (std::isnan(r.max_cluster) ? std::string("nan") : num(r.max_cluster)) << ","
        << num(r.min_re_gap) << "\n";
  return kOk;
}

// ---- driver ---------------------------------------------------------------------

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  try {
    c = parse_args(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << "usage: fobie {spectrum|verify|solve|sweep} [--k K] [--k-min A --k-max B "
           "--k-count N] [--eta E] [--lmax L]\n"
           "             [--formulation 1|2|both] [--incident planewave|multipole] "
           "[--dir x y z] [--pol x y z]\n"
           "             [--multipole-file F] [--out F] [--format csv|json] [--quick] "
           "[--tol T] [--inject-fault lift] [--config F]\n";
    return kOk;
  } catch (const UsageError& e) {
    err << "fobie: " << e.what() << "\n";
    return kUsage;
  }

  std::ofstream file;
  if (!c.out.empty()) {
    file.open(c.out);
    if (!file) {
      err << "fobie: cannot open " << c.out << " for writing\n";
      return kUsage;
    }
  }
  std::ostream& dst = c.out.empty() ? out : file;
  try {
    if (c.command == "spectrum") return cmd_spectrum(c, dst);
    if (c.command == "verify") return cmd_verify(c, dst);
    if (c.command == "solve") return cmd_solve(c, dst);
    return cmd_sweep(c, dst);
  } catch (const UsageError& e) {
    err << "fobie: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "fobie: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "fobie: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace fobie::cli
