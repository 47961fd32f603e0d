#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "weylkit/oddorder.hpp"
#include "weylkit/weyl.hpp"

namespace weylkit {

// Shipped examples. Each has a problem, a boundary parameter and a
// suggested real window for the spectral function.
struct Example {
  std::string name;
  Problem problem;
  BoundaryParameter tau;
  std::optional<Reduction> reduction;
  double sigma_lo = -10.0, sigma_hi = 10.0;
};

std::vector<std::string> example_names();
Example make_example(const std::string& name);

// −y″ = λy on [0, 1], y(0) = 0 at a, Dirichlet at 1 through τ.
Example dirichlet_unit();
// −y″ = λy on [0, ∞) with y(0) = 0, frozen tail from t0.
Example free_half_line(double t0 = 2.0);
// l[y] = −i y‴ on [0, ∞).
Example cubic_half_line();
// l[y] = −i y‴ on [0, 1], equal indices.
Example cubic_unit();
// l[y] = i y⁽⁵⁾ + y on [0, ∞).
Example quintic_half_line();
// sig(1,2) with a declared endpoint form of inertia (1, 0).
Example case1_synthetic();

// Random element of the J-unitary group (Cayley transform of J H).
Mat random_J_unitary(const BlockSignature& sig, std::mt19937_64& rng, double scale = 0.5);
// Boundary operator rows satisfying the three relations.
Mat random_U(const BlockSignature& sig, std::mt19937_64& rng);
// Definite system with polynomial coefficients on [0, 1]; kind is
// "regular", "tail" or "form".
SymmetricSystem random_system(const BlockSignature& sig, const std::string& kind, std::mt19937_64& rng);

}  // namespace weylkit
