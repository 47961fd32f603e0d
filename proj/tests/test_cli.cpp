#include <filesystem>
#include <fstream>
#include <sstream>

#include "config.hpp"
#include "doctest.h"
#include "emit.hpp"
#include "tasks.hpp"
#include "weylkit/error.hpp"

using namespace weylkit;
using namespace weylkit::cli;

namespace {

Errc config_error(const json& j) {
  try {
    parse_config(j, TolProfile::Default);
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::OutOfScope;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("number formatting round-trips") {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 1e-7}) CHECK(std::stod(fmt(x)) == x);
  CHECK(fmt(-0.0) == "0");
  CHECK(fmt(2.0) == "2");
}

TEST_CASE("csv layout") {
  std::ostringstream os;
  CsvWriter w(os);
  w.header({"s"}, 1, 2);
  Mat m(1, 2);
  m << cd(1.0, -0.5), cd(0.25, 0.0);
  w.row({3.0}, m);
  CHECK(os.str() == "s,re_0_0,im_0_0,re_0_1,im_0_1\n3,1,-0.5,0.25,0\n");
}

TEST_CASE("config schema errors") {
  CHECK(config_error(json::parse(R"({"task": "mfun"})")) == Errc::ConfigError);
  CHECK(config_error(json::parse(R"({"task": "mfun", "problem": {"example": "nowhere"}})")) == Errc::ConfigError);
  CHECK(config_error(json::parse(
            R"({"task": "mfun", "problem": {"example": "dirichlet_unit"}, "lambda": [[1.0, 0.0]]})")) ==
        Errc::ConfigError);
}

TEST_CASE("polynomial and tabulated samplers") {
  const MatrixSampler poly = parse_sampler(json::parse(R"([[{"polynomial": [1, 2]}]])"));
  CHECK(std::abs(poly(0.5)(0, 0) - 2.0) < 1e-15);
  const MatrixSampler tab =
      parse_sampler(json::parse(R"([[{"table": {"ts": [0, 1, 2, 3], "values": [0, 1, 4, 9]}}]])"));
  CHECK(std::abs(tab(2.0)(0, 0) - 4.0) < 1e-14);
  const LambdaSampler ls = parse_lambda_matrix(json::parse(R"({"polynomial": [[[1]], [[0.5]]]})"));
  CHECK(std::abs(ls(cd(2.0, 2.0))(0, 0) - cd(2.0, 1.0)) < 1e-15);
}

TEST_CASE("strict profile tightens the tolerances") {
  const json j = json::parse(R"({"task": "sigma", "problem": {"example": "dirichlet_unit"}})");
  const JobConfig d = parse_config(j, TolProfile::Default);
  const JobConfig s = parse_config(j, TolProfile::Strict);
  CHECK(s.stieltjes.eps.size() > d.stieltjes.eps.size());
  CHECK(s.stieltjes.quad_rel < d.stieltjes.quad_rel);
  CHECK(s.sf0_tol < d.sf0_tol);
}

TEST_CASE("grid output does not depend on the worker count") {
  const json j = json::parse(R"({
    "task": "mfun",
    "problem": {"example": "free_half_line"},
    "lambda": [[0, 1], [0, -1], [1, 0.5], [1, -0.5], [-2, 1.5], [-2, -1.5]]
  })");
  JobConfig c = parse_config(j, TolProfile::Default);
  const auto base = std::filesystem::temp_directory_path() / "weylkit_cli_test";
  std::filesystem::remove_all(base);
  c.workers = 1;
  const json one = run_task(c, (base / "w1").string());
  c.workers = 3;
  const json three = run_task(c, (base / "w3").string());
  CHECK(one.dump() == three.dump());
  CHECK(slurp(base / "w1" / "mfun.csv") == slurp(base / "w3" / "mfun.csv"));
  CHECK(!slurp(base / "w1" / "mfun.csv").empty());
  std::filesystem::remove_all(base);
}
