#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fobie/cli.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "fobie");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = fobie::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string f; std::getline(in, f, ',');) v.push_back(f);
  return v;
}

fs::path temp_file(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / ("fobie_test_" + name);
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("spectrum csv") {
  const Result r = run({"spectrum", "--k", "1", "--lmax", "50"});
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 52);
  CHECK(ls[0].rfind("l,re_s,im_s,re_lambda1,im_lambda1", 0) == 0);
  const auto row0 = split(ls[1]);
  CHECK(row0[3] == "0.25");
  CHECK(row0[4] == "0.25");
  CHECK(run({"spectrum", "--k", "1", "--lmax", "50"}).out == r.out);
}

TEST_CASE("spectrum json") {
  const Result r = run({"spectrum", "--k", "1", "--lmax", "50", "--format", "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["k"] == 1.0);
  CHECK(j["lmax"] == 50);
  REQUIRE(j["rows"].size() == 51);
  for (const auto& row : j["rows"]) {
    CHECK(row["s"].size() == 2);
    CHECK(row["lambda1"].size() == 2);
    CHECK(row["lambda2"].size() == 2);
    CHECK(row["l_abs_lambda2_minus_1"].is_number());
  }
  CHECK(j["rows"][0]["lambda1"][0] == doctest::Approx(0.25));
}

TEST_CASE("usage errors exit 2 and name the problem") {
  Result r = run({"spectrum", "--k", "-1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("k must be > 0") != std::string::npos);
  CHECK(run({"spectrum", "--k", "1", "--lmax", "0"}).code == 2);
  CHECK(run({"spectrum"}).code == 2);
  CHECK(run({"frobnicate", "--k", "1"}).code == 2);
  CHECK(run({"spectrum", "--k", "1", "--bogus"}).code == 2);
  CHECK(run({"spectrum", "--k", "1", "--format", "xml"}).code == 2);
  CHECK(run({"spectrum", "--k", "abc"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("solve plane wave") {
  const Result r = run({"solve", "--k", "1", "--lmax", "40", "--incident", "planewave", "--dir",
                        "0", "0", "1", "--pol", "1", "0", "0"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["diagnostics"]["cross_formulation_diff"].get<double>() <= 1e-8);
  CHECK(j["solutions"].contains("F1"));
  CHECK(j["solutions"].contains("F2"));

  // no tolerance is that tight
  CHECK(run({"solve", "--k", "1", "--lmax", "10", "--incident", "planewave", "--tol", "1e-30"}).code == 1);
  const Result one = run({"solve", "--k", "1", "--lmax", "10", "--incident", "planewave",
                          "--formulation", "2", "--format", "csv"});
  CHECK(one.code == 0);
  CHECK(lines(one.out)[0] == "formulation,field,l,m,re,im");
  CHECK(lines(one.out)[1].rfind("2,dnE1,0,0,", 0) == 0);
}

TEST_CASE("solve usage errors") {
  CHECK(run({"solve", "--k", "1"}).code == 2);
  CHECK(run({"solve", "--k", "1", "--incident", "planewave", "--pol", "0", "0", "1"}).code == 2);
  CHECK(run({"solve", "--k", "1", "--incident", "multipole"}).code == 2);
  CHECK(run({"solve", "--k", "1", "--incident", "multipole", "--multipole-file",
             "/nonexistent/spec.json"}).code == 2);
  const fs::path bad = temp_file("bad.json", R"({"terms":[{"l":0,"m":0,"a":1,"b":1}]})");
  CHECK(run({"solve", "--k", "1", "--incident", "multipole", "--multipole-file", bad.string()}).code == 2);
}

TEST_CASE("solve manufactured multipole") {
  const fs::path p = temp_file(
      "mp.json",
      R"({"terms":[{"l":1,"m":0,"a":[1,0.5],"b":[0.3,-0.2]},{"l":3,"m":-2,"a":[0,0.7],"b":1.1},{"l":4,"m":4,"a":0.2,"b":[-0.5,0.4]}]})");
  const Result r = run({"solve", "--k", "2", "--incident", "multipole", "--multipole-file",
                        p.string()});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["diagnostics"]["coefficient_error"].get<double>() <= 1e-8);
  CHECK(run({"solve", "--k", "2", "--lmax", "3", "--incident", "multipole", "--multipole-file",
             p.string()}).code == 2);
}

TEST_CASE("sweep") {
  const Result r = run({"sweep", "--k-min", "0.1", "--k-max", "20", "--k-count", "60"});
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 61);
  CHECK(ls[0] ==
        "k,eta,lmax,min_abs_lambda1,argmin_lambda1,min_abs_lambda2,argmin_lambda2,"
        "max_l_abs_lambda2_minus_1,min_neg_re_s_minus_1");
  double prev_k = 0;
  for (size_t i = 1; i < ls.size(); ++i) {
    const auto f = split(ls[i]);
    CHECK(std::stod(f[0]) > prev_k);  // grid order
    prev_k = std::stod(f[0]);
    CHECK(std::stod(f[5]) > 0.0);
    CHECK(std::isfinite(std::stod(f[7])));
  }
  CHECK(run({"sweep", "--k-min", "1", "--k-max", "2", "--k-count", "0"}).code == 2);
  CHECK(run({"sweep", "--k-min", "2", "--k-max", "1", "--k-count", "3"}).code == 2);
  CHECK(run({"sweep"}).code == 2);
}

TEST_CASE("sweep output does not depend on worker count") {
  const std::vector<std::string> args{"sweep", "--k-min", "0.5", "--k-max", "30", "--k-count", "9",
                                      "--lmax", "120"};
  setenv("FOBIE_THREADS", "1", 1);
  CHECK(fobie::cli::worker_count() == 1);
  const Result a = run(args);
  setenv("FOBIE_THREADS", "4", 1);
  const Result b = run(args);
  unsetenv("FOBIE_THREADS");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("single-point sweep agrees with spectrum") {
  const Result sw = run({"sweep", "--k", "2.5", "--lmax", "80"});
  const Result sp = run({"spectrum", "--k", "2.5", "--lmax", "80"});
  const auto row = split(lines(sw.out).at(1));
  double min1 = 1e300, min2 = 1e300;
  for (size_t i = 1; i < lines(sp.out).size(); ++i) {
    const auto f = split(lines(sp.out)[i]);
    min1 = std::min(min1, std::stod(f[7]));
    min2 = std::min(min2, std::hypot(std::stod(f[5]), std::stod(f[6])));
  }
  CHECK(std::stod(row[3]) == doctest::Approx(min1).epsilon(1e-14));
  CHECK(std::stod(row[5]) == doctest::Approx(min2).epsilon(1e-14));
}

TEST_CASE("config file, flags win") {
  const fs::path cfg = temp_file("cfg.json", R"({"k": 3.0, "lmax": 5, "format": "json"})");
  const auto j = nlohmann::json::parse(run({"spectrum", "--config", cfg.string()}).out);
  CHECK(j["k"] == 3.0);
  CHECK(j["lmax"] == 5);
  const Result r = run({"spectrum", "--config", cfg.string(), "--lmax", "7", "--format", "csv"});
  CHECK(lines(r.out).size() == 9);
  const fs::path bad = temp_file("cfg_bad.json", R"({"k": "fast"})");
  CHECK(run({"spectrum", "--config", bad.string()}).code == 2);
  CHECK(run({"spectrum", "--config", "/nonexistent/cfg.json"}).code == 2);
}

TEST_CASE("out file") {
  const fs::path p = fs::temp_directory_path() / "fobie_test_out.csv";
  fs::remove(p);
  CHECK(run({"spectrum", "--k", "1", "--lmax", "3", "--out", p.string()}).out.empty());
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  CHECK(s.str() == run({"spectrum", "--k", "1", "--lmax", "3"}).out);
}

TEST_CASE("verify reports per check and honors fault injection") {
  const Result r = run({"verify", "--quick", "--format", "json"});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(r.code == (j["passed"].get<bool>() ? 0 : 1));
  bool lift_ok = false;
  for (const auto& c : j["checks"])
    if (c["name"].get<std::string>().rfind("lift_quadrature", 0) == 0) lift_ok = c["passed"];
  CHECK(lift_ok);

  const Result f = run({"verify", "--quick", "--inject-fault", "lift"});
  CHECK(f.code == 1);
  CHECK(f.out.find("FAIL  lift_quadrature") != std::string::npos);
  CHECK(run({"verify", "--inject-fault", "solver"}).code == 2);
}

}
