#pragma once

#include <optional>
#include <vector>

#include "weylkit/boundary.hpp"
#include "weylkit/ode.hpp"
#include "weylkit/system.hpp"

namespace weylkit {

// Values of y' = −J(B + λΔ)y with y(t0) = Y0 at sorted ts (one side of t0).
std::vector<Mat> propagate_to(const SymmetricSystem& sys, cd lambda, const Mat& Y0, double t0,
                              const std::vector<double>& ts, const OdeOptions& opts = {});
Mat propagate(const SymmetricSystem& sys, cd lambda, const Mat& Y0, double t0, double t1,
              const OdeOptions& opts = {});
DenseSolution propagate_dense(const SymmetricSystem& sys, cd lambda, const Mat& Y0, double t0, double t1,
                              const OdeOptions& opts = {});

// Y(t, λ) with Y(a, λ) = I.
Mat fundamental_matrix(const SymmetricSystem& sys, cd lambda, double t);
// max_t ||Y(t, λ̄)* J Y(t, λ) − J|| over ts.
double wronskian_drift(const SymmetricSystem& sys, cd lambda, const std::vector<double>& ts);

struct PhiPsi {
  Mat phi;
  Mat psi;
};
PhiPsi phi_psi(const SymmetricSystem& sys, const BoundaryOperatorU& U, cd lambda, double t);

// Solutions of the homogeneous system stored column-wise. On [a, right()]
// the columns come from a dense integration; a constant tail continues them
// as X exp(S (t − t0)), an abstract endpoint closes them with the model tail
// form Ŵ = Ω + iJ at t_cut.
class SolutionBasis {
 public:
  cd lambda{};
  int columns = 0;
  std::vector<cd> decay_rates;
  bool jordan = false;

  Mat eval(double t) const;
  Mat at_a() const { return eval(a_); }
  // Endpoint data ξ (data_dim × columns).
  Mat b_data() const;
  // Same solution space, columns recombined by C (columns × k).
  SolutionBasis combine(const Mat& C) const;
  double a() const { return a_; }
  double right() const { return right_; }
  std::vector<double> knots() const;

  // ∫ A* Δ B over the whole interval including any tail.
  friend Mat cross_gram(const SymmetricSystem& sys, const SolutionBasis& A, const SolutionBasis& B);

  static SolutionBasis from_dense(cd lambda, DenseSolution dense, double a, double right, Mat coeff);

 private:
  friend SolutionBasis l2_basis(const SymmetricSystem& sys, cd lambda, double mode_tol);
  friend SolutionBasis full_basis(const SymmetricSystem& sys, cd lambda);
  double a_ = 0.0, right_ = 0.0;
  DenseSolution dense_;
  Mat coeff_;  // columns are dense_.eval(t) * coeff_
  enum class Tail { None, Constant, Model } tail_ = Tail::None;
  Mat X_, S_, Delta_inf_;  // constant tail: value at t0 is X_ (before coeff_)
  Mat W_;                  // model tail form
};

Mat cross_gram(const SymmetricSystem& sys, const SolutionBasis& A, const SolutionBasis& B);
inline Mat gram(const SymmetricSystem& sys, const SolutionBasis& A) { return cross_gram(sys, A, A); }

// Solution space of L²_Δ at λ (Im λ ≠ 0).
SolutionBasis l2_basis(const SymmetricSystem& sys, cd lambda, double mode_tol = 1e-6);
// All n solutions, normalised by Y(a) = I, on [a, right()] without tail.
SolutionBasis full_basis(const SymmetricSystem& sys, cd lambda);

struct ModeCount {
  int decaying = 0;
  int growing = 0;
  bool neutral = false;
  bool jordan = false;
  std::vector<cd> rates;
};
ModeCount count_modes(const Mat& A, cd lambda, double mode_tol);

struct DeficiencyIndices {
  int n_plus = 0;
  int n_minus = 0;
};
DeficiencyIndices deficiency_indices(const SymmetricSystem& sys, double mode_tol = 1e-6);

}  // namespace weylkit
