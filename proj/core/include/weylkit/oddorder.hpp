#pragma once

#include <vector>

#include "weylkit/weyl.hpp"

namespace weylkit {

// l[y] = Σ_k (−1)^k ( (i/2)[(q_{m−k} y^{(k)})^{(k+1)} + (q_{m−k} y^{(k+1)})^{(k)}] + (p_{m−k} y^{(k)})^{(k)} ),
// coefficients indexed p[0..m], q[0..m].
struct OddOrderExpression {
  int m = 1;
  int dimH = 1;
  std::vector<MatrixSampler> p, q;

  static OddOrderExpression constant_scalar(int m, std::vector<double> p, std::vector<double> q);
  bool scalar_constant() const;
  void validate(const std::vector<double>& grid) const;
};

// i q0 = −Q1* Q2 + Q2* Q1 + i Q̂* Q̂ at every grid point.
struct QFactorization {
  int nu0_plus = 0;
  int nu0_minus = 0;
  int sign = 1;  // −1 when the expression was negated to get ν₀₋ ≤ ν₀₊
  std::vector<double> ts;
  std::vector<Mat> Q1, Qhat, Q2;
  double identity_residual = 0.0;
};

QFactorization q0_inertia_factorization(const OddOrderExpression& e, const std::vector<double>& grid);
// Factors of a single Hermitian invertible q0 (sign already applied).
void factor_q0(const Mat& q0, Mat& Q1, Mat& Qhat, Mat& Q2);

struct QuasiDerivatives {
  Vec y;     // y^{[0]}, ..., y^{[2m+1]} with y^{[2m+1]} = l[y]
  Vec bold;  // state vector of the reduced system
};

// jet = (y, y′, ..., y^{(2m+1)}) at one point; scalar constant coefficients, m ≤ 2.
QuasiDerivatives quasi_derivatives(const OddOrderExpression& e, const Vec& jet);

// Coefficients c_k of l[y] = Σ c_k y^{(k)} for scalar constant coefficients.
std::vector<cd> symbol_coefficients(const OddOrderExpression& e);

struct Reduction {
  OddOrderExpression expr;
  SymmetricSystem sys;
  Mat jet_to_bold;  // n × (2m+1), acting on (y, ..., y^{(2m)})
  int sign = 1;
};

// Regular endpoint b, or a half-line written as a constant tail from a.
Reduction reduce_to_system(const OddOrderExpression& e, double a, Endpoint endpoint);
// Max relative deviation between the reduced system solution and the jet map
// of the directly integrated scalar equation l[y] = λ y on [a, t_end].
double reduction_fidelity(const Reduction& r, cd lambda, double t_end, const std::vector<Vec>& jets,
                          int samples = 11);
// Number of roots of Σ c_k κ^k = λ with Re κ < 0.
int scalar_decaying_count(const OddOrderExpression& e, cd lambda);

struct OddDeficiency {
  int d_plus = 0;
  int d_minus = 0;
};
// Formula only; accepts matrix and variable coefficients.
OddDeficiency odd_deficiency(const OddOrderExpression& e, int nu_b_plus, int nu_b_minus,
                             const std::vector<double>& grid);
// Formula cross-checked against the deficiency indices of the reduced system.
OddDeficiency odd_deficiency(const Reduction& r);

// Boundary conditions Γ1a y = 0, Γ̂a y = Γ̂b y, C0 Γ0b y + C1 Γ1b y = 0.
struct SelfAdjointBC {
  Mat C0, C1;
  BoundaryParameter tau;
  Mat rows;  // n × 2n on (y(a); y(b))
  double lagrangian_residual = 0.0;
};

bool is_selfadjoint_pair(const Mat& C0, const Mat& C1, double tol = 1e-10);
SelfAdjointBC selfadjoint_bc(const Problem& p, const Mat& C0, const Mat& C1);
// Zeros of det(rows · [Y(a); Y(b)]) found from a real scan of [lo, hi].
std::vector<cd> bc_eigenvalues(const Problem& p, const SelfAdjointBC& bc, double lo, double hi, int scan = 400);

}  // namespace weylkit
