#pragma once

#include <string>
#include <variant>
#include <vector>

#include "weylkit/blockspace.hpp"
#include "weylkit/sampler.hpp"

namespace weylkit {

struct Regular {
  double b = 1.0;
};

// Coefficients are frozen to (B_inf, Delta_inf) for t >= t0.
struct ConstantTail {
  double t0 = 0.0;
  Mat B_inf;
  Mat Delta_inf;
};

// Declared endpoint form: -i[y,z]_b = z(t_cut)* Omega y(t_cut).
struct AbstractForm {
  double t_cut = 1.0;
  Mat Omega;
};

using Endpoint = std::variant<Regular, ConstantTail, AbstractForm>;

std::string endpoint_kind(const Endpoint& e);

struct SymmetricSystem {
  BlockSignature sig;
  double a = 0.0;
  Endpoint endpoint;
  MatrixSampler B;
  MatrixSampler Delta;
  Mat J;

  static SymmetricSystem make(BlockSignature sig, double a, Endpoint endpoint, MatrixSampler B, MatrixSampler Delta);

  int n() const { return sig.n(); }
  // Right end of the interval that is integrated numerically.
  double right() const;
  bool is_tail() const { return std::holds_alternative<ConstantTail>(endpoint); }
  Mat B_at(double t) const;
  Mat Delta_at(double t) const;
  // A(t, λ) = -J (B(t) + λ Δ(t)), so that y' = A y.
  Mat generator(double t, cd lambda) const;
  // Generator is independent of t on [a, right()].
  bool coefficients_constant() const;
};

struct CoefficientReport {
  double B_hermiticity = 0.0;
  double Delta_hermiticity = 0.0;
  double Delta_negativity = 0.0;
  double max_residual = 0.0;
};

CoefficientReport validate_coefficients(const SymmetricSystem& sys, const std::vector<double>& grid);

bool check_definite(const SymmetricSystem& sys, const std::vector<cd>& lambdas, const std::vector<double>& grid,
                    double tol = 1e-8);

std::vector<double> linspace(double lo, double hi, int count);

}  // namespace weylkit
