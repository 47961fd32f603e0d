#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "weylkit/catalog.hpp"
#include "weylkit/spectral.hpp"

namespace weylkit::cli {

using json = nlohmann::json;

enum class TolProfile { Default, Strict };

struct GridSpec {
  double lo = -10.0;
  double hi = 10.0;
  int cells = 200;
  std::vector<double> points() const { return linspace(lo, hi, cells + 1); }
};

struct FunctionSpec {
  std::string shape = "smooth";  // smooth | sin4 | indicator
  double lo = 0.0;
  double hi = 1.0;
  int component = 0;
  WeightedFunction build(int dim) const;
};

struct JobConfig {
  std::string task;
  std::string source;  // example | system | oddorder
  std::string example;
  Example job;         // problem, τ and optional reduction
  std::vector<cd> lambdas;
  GridSpec grid;
  GridSpec x_grid;
  StieltjesOptions stieltjes;
  FunctionSpec function;
  std::vector<double> sf0_ys = {1e1, 1e2, 1e3, 1e4};
  double sf0_tol = 1e-6;
  double fidelity_t_end = 2.0;
  int workers = 1;
  TolProfile profile = TolProfile::Default;
};

cd parse_complex(const json& j);
Mat parse_matrix(const json& j);
MatrixSampler parse_sampler(const json& j);
LambdaSampler parse_lambda_matrix(const json& j);
Endpoint parse_endpoint(const json& j);

// Throws Error(ConfigError) on schema violations.
JobConfig parse_config(const json& j, TolProfile profile);
JobConfig load_config(const std::string& path, TolProfile profile);

}  // namespace weylkit::cli
