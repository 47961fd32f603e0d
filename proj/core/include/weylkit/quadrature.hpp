#pragma once

#include <functional>
#include <vector>

#include "weylkit/blockspace.hpp"

namespace weylkit {

using MatFn = std::function<Mat(double)>;

// 16-point Gauss–Legendre on every panel [knots[i], knots[i+1]].
Mat gauss_legendre_panels(const MatFn& f, const std::vector<double>& knots);

// Panels refined until each holds at most max_len.
std::vector<double> refine_knots(const std::vector<double>& knots, double max_len);

struct QuadResult {
  Mat value;
  double error = 0.0;
  long evals = 0;
};

// Globally adaptive Gauss–Kronrod 7/15 for matrix-valued integrands.
QuadResult gauss_kronrod(const MatFn& f, double lo, double hi, double abs_tol, double rel_tol,
                         int max_intervals = 2000);
// Same, starting from the partition `knots`; the final partition is
// written to *final_knots when given.
QuadResult gauss_kronrod(const MatFn& f, const std::vector<double>& knots, double abs_tol, double rel_tol,
                         int max_intervals, std::vector<double>* final_knots);

}  // namespace weylkit
