#pragma once

#include <functional>
#include <vector>

#include "weylkit/weyl.hpp"

namespace weylkit {

// f : [a, b) → ℍ supported in [lo, hi].
struct WeightedFunction {
  std::function<Vec(double)> f;
  double lo = 0.0;
  double hi = 1.0;
  Vec operator()(double t) const;
};

double delta_norm2(const SymmetricSystem& sys, const WeightedFunction& f, int panels = 64);

// G_τ(x, t, λ) = v_τ(x, λ) φ_U*(t, λ̄) for x > t and φ_U(x, λ) v_τ*(t, λ̄) for x < t,
// with v_τ = φ_U m_τ + ψ on [a, x_max].
class GreenKernel {
 public:
  GreenKernel(const Problem& p, const BoundaryParameter& tau, cd lambda, double x_max);
  Mat operator()(double x, double t) const;
  Mat phi(double t) const;
  Mat v(double t) const;
  Mat phi_bar(double t) const;
  Mat v_bar(double t) const;
  const Mat& m() const { return m_; }
  cd lambda() const { return lambda_; }
  double x_max() const { return x_max_; }
  const Problem& problem() const { return *p_; }
  std::vector<double> knots() const;

 private:
  const Problem* p_;
  cd lambda_;
  double x_max_;
  Mat m_;
  DenseSolution sol_, sol_bar_;
};

// y_f(x) = ∫ G_τ(x, t, λ) Δ(t) f(t) dt.
Vec green_apply(const GreenKernel& g, const WeightedFunction& f, double x);
std::vector<Vec> green_apply(const GreenKernel& g, const WeightedFunction& f, const std::vector<double>& xs);

struct Jump {
  double location = 0.0;
  Mat weight;
};

struct DistributionFunction {
  std::vector<double> grid;
  std::vector<Mat> increments;  // per cell, point masses included
  std::vector<Mat> continuous;  // per cell, point masses removed
  std::vector<Jump> jumps;
  double total_mass = 0.0;
  int cells() const { return static_cast<int>(increments.size()); }
};

struct StieltjesOptions {
  std::vector<double> eps = {1e-3, 1e-4};
  double jump_tol_rel = 1e-3;
  double loc_tol = 1e-9;
  double quad_rel = 1e-7;
  double quad_abs = 1e-12;
  int workers = 1;
  bool detect_jumps = true;
};

using MSampler = std::function<Mat(cd)>;

// Σ([s_j, s_{j+1})) = −lim_ε (1/π) ∫ Im m(σ − iε) dσ, Richardson-extrapolated
// over the two smallest ε of the schedule.
DistributionFunction stieltjes_inversion(const MSampler& m, const std::vector<double>& grid,
                                         const StieltjesOptions& opts = {});

// f̂(s) = ∫ φ_U*(t, s) Δ(t) f(t) dt at each s.
std::vector<Vec> fourier(const Problem& p, const WeightedFunction& f, const std::vector<double>& s_grid,
                         int workers = 1);

// Nodes at which a DistributionFunction is paired with f̂: cell midpoints,
// then jump locations.
std::vector<double> pairing_nodes(const DistributionFunction& sigma);
double transform_norm2(const DistributionFunction& sigma, const std::vector<Vec>& fhat_nodes);
double parseval_defect(const Problem& p, const DistributionFunction& sigma, const WeightedFunction& f,
                       int workers = 1);

// f̃(t) = ∫ φ_U(t, s) dΣ(s) f̂(s) on [a, x_max].
class InverseTransform {
 public:
  InverseTransform(const Problem& p, const DistributionFunction& sigma, const std::vector<Vec>& fhat_nodes,
                   double x_max, int workers = 1);
  Vec operator()(double t) const;
  double x_max() const { return x_max_; }

 private:
  const Problem* p_;
  std::vector<DenseSolution> phis_;
  std::vector<Vec> coeffs_;  // dΣ f̂ per node
  double x_max_;
};

InverseTransform inverse_fourier(const Problem& p, const DistributionFunction& sigma,
                                 const std::vector<Vec>& fhat_nodes, double x_max, int workers = 1);
// ‖f − f̃‖_Δ / ‖f‖_Δ over [a, x_max].
double roundtrip_error(const Problem& p, const DistributionFunction& sigma, const WeightedFunction& f,
                       double x_max, int workers = 1);

struct SF0Report {
  std::vector<double> ys;
  std::vector<double> B, Bhat, B_lower;  // norms of the finite-y values
  double B_limit = 0.0;
  double Bhat_limit = 0.0;
  bool verdict = false;
};

SF0Report sf0_criteria(const Problem& p, const BoundaryParameter& tau,
                       const std::vector<double>& ys = {1e1, 1e2, 1e3, 1e4}, double tol = 1e-6);

struct SpectrumReport {
  std::vector<std::pair<double, double>> ac_intervals;
  std::vector<double> points;
  bool ac_covers_grid = false;
};

// principal < 0 reads all of Σ; otherwise point masses are read from the
// leading principal×principal block only.
SpectrumReport spectrum_readout(const DistributionFunction& sigma, double dens_tol = 1e-6, int principal = -1);

}  // namespace weylkit
