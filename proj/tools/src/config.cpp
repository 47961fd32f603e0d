#include "config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "weylkit/error.hpp"

namespace weylkit::cli {
namespace {

[[noreturn]] void bad(const std::string& what) { fail(Errc::ConfigError, what); }

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing key '") + key + "'");
  return j.at(key);
}

double number(const json& j, const char* key, double fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  if (!j.at(key).is_number()) bad(std::string("'") + key + "' must be a number");
  return j.at(key).get<double>();
}

std::vector<double> reals(const json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) bad(std::string(what) + " must be an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

GridSpec parse_grid(const json& j, GridSpec g) {
  g.lo = number(j, "lo", g.lo);
  g.hi = number(j, "hi", g.hi);
  g.cells = static_cast<int>(number(j, "cells", g.cells));
  if (!(g.hi > g.lo) || g.cells < 1) bad("grid needs lo < hi and cells >= 1");
  return g;
}

BoundaryParameter parse_tau(const json& j, const Problem& p) {
  const std::string kind = j.value("kind", "tau0");
  if (kind == "tau0") return make_tau(p.triplet, TauKind::Tau0);
  if (kind == "endpoint_rows") return tau_from_endpoint_rows(p.triplet, parse_matrix(need(j, "K")));
  TauKind k;
  if (kind == "truncated")
    k = TauKind::Truncated;
  else if (kind == "general")
    k = TauKind::General;
  else
    bad("unknown tau kind '" + kind + "'");
  return make_tau(p.triplet, k, parse_lambda_matrix(need(j, "D0")), parse_lambda_matrix(need(j, "D1")));
}

Example parse_system(const json& j) {
  const auto sigv = reals(need(j, "signature"), "signature");
  if (sigv.size() != 2) bad("signature is [nu_plus, nu_hat]");
  const auto sig = BlockSignature::make(static_cast<int>(sigv[0]), static_cast<int>(sigv[1]));
  const double a = number(j, "a", 0.0);
  auto sys = SymmetricSystem::make(sig, a, parse_endpoint(need(j, "endpoint")), parse_sampler(need(j, "B")),
                                   parse_sampler(need(j, "Delta")));
  Example ex{"system", Problem::make(sys, parse_matrix(need(j, "U"))), {}, std::nullopt};
  return ex;
}

Example parse_oddorder(const json& j) {
  const int m = static_cast<int>(number(j, "m", 1));
  const auto e = OddOrderExpression::constant_scalar(m, reals(need(j, "p"), "p"), reals(need(j, "q"), "q"));
  const double a = number(j, "a", 0.0);
  Endpoint end = j.contains("endpoint") ? parse_endpoint(j.at("endpoint")) : Endpoint{ConstantTail{a, {}, {}}};
  const Reduction r = reduce_to_system(e, a, end);
  const BlockSignature& sig = r.sys.sig;
  const Mat U = j.contains("U") ? parse_matrix(j.at("U")) : separated_U(sig, Mat::Zero(sig.nu_plus, sig.nu_plus));
  Example ex{"oddorder", Problem::make(r.sys, U), {}, r};
  return ex;
}

}  // namespace

cd parse_complex(const json& j) {
  if (j.is_number()) return cd(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return cd(j[0].get<double>(), j[1].get<double>());
  bad("complex numbers are written as x or [re, im]");
}

Mat parse_matrix(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) bad("matrices are arrays of rows");
  const int rows = static_cast<int>(j.size()), cols = static_cast<int>(j[0].size());
  Mat out(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols) bad("ragged matrix");
    for (int c = 0; c < cols; ++c) out(r, c) = parse_complex(j[r][c]);
  }
  return out;
}

MatrixSampler parse_sampler(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) bad("coefficient matrices are arrays of rows");
  const int rows = static_cast<int>(j.size()), cols = static_cast<int>(j[0].size());
  std::vector<ScalarSampler> entries;
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols) bad("ragged coefficient matrix");
    for (int c = 0; c < cols; ++c) {
      const json& e = j[r][c];
      if (e.is_object() && e.contains("polynomial")) {
        std::vector<cd> coeffs;
        for (const auto& v : e.at("polynomial")) coeffs.push_back(parse_complex(v));
        entries.push_back(ScalarSampler::polynomial(coeffs));
      } else if (e.is_object() && e.contains("table")) {
        const json& t = e.at("table");
        if (t.value("interpolation", "cubic") != "cubic") bad("only cubic table interpolation is supported");
        std::vector<cd> vals;
        for (const auto& v : need(t, "values")) vals.push_back(parse_complex(v));
        entries.push_back(ScalarSampler::table(reals(need(t, "ts"), "ts"), vals));
      } else {
        entries.push_back(ScalarSampler::constant(parse_complex(e)));
      }
    }
  }
  return MatrixSampler(rows, cols, entries);
}

LambdaSampler parse_lambda_matrix(const json& j) {
  if (j.is_object() && j.contains("polynomial")) {
    std::vector<Mat> coeffs;
    for (const auto& m : j.at("polynomial")) coeffs.push_back(parse_matrix(m));
    if (coeffs.empty()) bad("empty polynomial");
    return polynomial_lambda_sampler(coeffs);
  }
  return constant_lambda_sampler(parse_matrix(j));
}

Endpoint parse_endpoint(const json& j) {
  const std::string type = need(j, "type").get<std::string>();
  if (type == "regular") return Regular{number(j, "b", 1.0)};
  if (type == "tail") {
    ConstantTail t{number(j, "t0", 0.0), {}, {}};
    if (j.contains("B_inf")) t.B_inf = parse_matrix(j.at("B_inf"));
    if (j.contains("Delta_inf")) t.Delta_inf = parse_matrix(j.at("Delta_inf"));
    return t;
  }
  if (type == "form") return AbstractForm{number(j, "t_cut", 1.0), parse_matrix(need(j, "Omega"))};
  bad("unknown endpoint type '" + type + "'");
}

WeightedFunction FunctionSpec::build(int dim) const {
  if (component < 0 || component >= dim) bad("function component out of range");
  const double a = lo, b = hi;
  const int comp = component;
  std::function<double(double)> shape_fn;
  if (shape == "smooth") {
    shape_fn = [a, b](double t) {
      if (t <= a || t >= b) return 0.0;
      return std::exp(-(b - a) / ((t - a) * (b - t)));
    };
  } else if (shape == "sin4") {
    shape_fn = [a, b](double t) {
      if (t <= a || t >= b) return 0.0;
      const double s = std::sin(M_PI * (t - a) / (b - a));
      return s * s * s * s;
    };
  } else if (shape == "indicator") {
    shape_fn = [a, b](double t) { return t >= a && t <= b ? 1.0 : 0.0; };
  } else {
    bad("unknown function shape '" + shape + "'");
  }
  return WeightedFunction{[dim, comp, shape_fn](double t) {
                            Vec v = Vec::Zero(dim);
                            v(comp) = shape_fn(t);
                            return v;
                          },
                          lo, hi};
}

JobConfig parse_config(const json& j, TolProfile profile) {
  if (!j.is_object()) bad("config must be an object");
  JobConfig c;
  c.profile = profile;
  c.task = j.value("task", "");
  const json& prob = need(j, "problem");
  if (prob.contains("example")) {
    c.source = "example";
    c.example = prob.at("example").get<std::string>();
    c.job = make_example(c.example);
    c.grid.lo = c.job.sigma_lo;
    c.grid.hi = c.job.sigma_hi;
  } else if (prob.contains("system")) {
    c.source = "system";
    c.job = parse_system(prob.at("system"));
  } else if (prob.contains("oddorder")) {
    c.source = "oddorder";
    c.job = parse_oddorder(prob.at("oddorder"));
  } else {
    bad("problem needs one of 'example', 'system', 'oddorder'");
  }
  if (prob.contains("tau")) c.job.tau = parse_tau(prob.at("tau"), c.job.problem);
  else if (c.source != "example") c.job.tau = make_tau(c.job.problem.triplet, TauKind::Tau0);

  if (j.contains("lambda")) {
    for (const auto& v : j.at("lambda")) c.lambdas.push_back(parse_complex(v));
  } else {
    c.lambdas = {cd(0.0, 1.0), cd(0.0, -1.0), cd(1.0, 0.5), cd(1.0, -0.5), cd(-2.0, 1.5), cd(-2.0, -1.5)};
  }
  for (cd l : c.lambdas)
    if (l.imag() == 0.0) bad("λ samples must be nonreal");
  if (j.contains("grid")) c.grid = parse_grid(j.at("grid"), c.grid);
  c.x_grid = GridSpec{c.job.problem.sys.a, c.job.problem.sys.right(), 50};
  if (j.contains("x")) c.x_grid = parse_grid(j.at("x"), c.x_grid);

  if (profile == TolProfile::Strict) {
    c.stieltjes.eps = {1e-1, 1e-2, 1e-3, 1e-4};
    c.stieltjes.quad_rel = 1e-9;
    c.sf0_tol = 1e-8;
  }
  if (j.contains("stieltjes")) {
    const json& s = j.at("stieltjes");
    if (s.contains("eps")) c.stieltjes.eps = reals(s.at("eps"), "eps");
    c.stieltjes.jump_tol_rel = number(s, "jump_tol_rel", c.stieltjes.jump_tol_rel);
    c.stieltjes.loc_tol = number(s, "loc_tol", c.stieltjes.loc_tol);
    c.stieltjes.quad_rel = number(s, "quad_rel", c.stieltjes.quad_rel);
    c.stieltjes.detect_jumps = s.value("detect_jumps", c.stieltjes.detect_jumps);
    for (std::size_t k = 1; k < c.stieltjes.eps.size(); ++k)
      if (!(c.stieltjes.eps[k] < c.stieltjes.eps[k - 1])) bad("eps schedule must decrease");
  }
  if (j.contains("function")) {
    const json& f = j.at("function");
    c.function.shape = f.value("shape", c.function.shape);
    c.function.lo = number(f, "lo", c.function.lo);
    c.function.hi = number(f, "hi", c.function.hi);
    c.function.component = static_cast<int>(number(f, "component", 0));
  }
  if (j.contains("sf0")) {
    const json& s = j.at("sf0");
    if (s.contains("ys")) c.sf0_ys = reals(s.at("ys"), "ys");
    c.sf0_tol = number(s, "tol", c.sf0_tol);
  }
  c.fidelity_t_end = number(j, "fidelity_t_end", c.fidelity_t_end);
  return c;
}

JobConfig load_config(const std::string& path, TolProfile profile) {
  std::ifstream in(path);
  if (!in) bad("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in, nullptr, true, true);
  } catch (const json::exception& e) {
    bad(std::string("config parse error: ") + e.what());
  }
  try {
    return parse_config(j, profile);
  } catch (const json::exception& e) {
    bad(std::string("config type error: ") + e.what());
  }
}

}  // namespace weylkit::cli
