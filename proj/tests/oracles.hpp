#pragma once

#include <functional>
#include <vector>

#include "weylkit/blockspace.hpp"

// Independent reference computations for the tests (Boost odeint, closed forms).
namespace oracle {

using weylkit::cd;
using weylkit::Mat;
using weylkit::Vec;

using Generator = std::function<Mat(double)>;

// y' = A(t) y from t0 to each of ts (sorted away from t0), Dormand–Prince via odeint.
std::vector<Vec> odeint_solve(const Generator& A, const Vec& y0, double t0, const std::vector<double>& ts,
                              double tol = 1e-12);

// Σ c_k y^{(k)} = λ y integrated as a companion system; returns the jets (y, ..., y^{(N-1)}).
std::vector<Vec> scalar_jets(const std::vector<cd>& c, cd lambda, const Vec& jet0, double t0,
                             const std::vector<double>& ts);

// y'(0)/y(0) for −y″ = λ y with y(X) = 0, y'(X) = 1.
cd truncated_shooting_m(cd lambda, double X);

}  // namespace oracle
