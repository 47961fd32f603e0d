#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace weylkit {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;

inline constexpr cd I_unit{0.0, 1.0};

// Dimensions of H, Ĥ, H0 = H ⊕ Ĥ and the state space H0 ⊕ H.
struct BlockSignature {
  int nu_plus = 1;
  int nu_hat = 0;

  int nu_minus() const { return nu_plus + nu_hat; }
  int n() const { return nu_plus + nu_minus(); }

  static BlockSignature make(int nu_plus, int nu_hat);
  bool operator==(const BlockSignature&) const = default;
};

struct Inertia {
  int pos = 0;
  int neg = 0;
  int zero = 0;
  bool operator==(const Inertia&) const = default;
};

Mat build_J(const BlockSignature& sig);

// Eigenvalues above tol*||h|| count as positive, below -tol*||h|| as negative.
Inertia inertia(const Mat& h, double tol = 1e-10);

// Sum of clipped negativity of (Im λ)·Im m(λ) over samples plus the
// symmetry residual ||m(λ̄)* − m(λ)|| over the conjugate pairs present.
double nevanlinna_defect(const std::vector<std::pair<cd, Mat>>& samples, double pair_tol = 1e-14);

// (m − m*)/(2i)
Mat im_part(const Mat& m);
Mat herm_part(const Mat& m);
double spectral_norm(const Mat& m);
double min_eigenvalue(const Mat& hermitian);
Mat psd_sqrt(const Mat& psd);
// Orthonormal basis of the null space of a (rows x n) matrix.
Mat null_space(const Mat& a, double rel_tol = 1e-10);
// Orthonormal basis of {x : x* a = 0}, i.e. left null space, returned as rows.
Mat left_null_space(const Mat& a, double rel_tol = 1e-10);
double condition_number(const Mat& a);
Mat select_rows(const Mat& a, const std::vector<int>& idx);
Mat select_cols(const Mat& a, const std::vector<int>& idx);
std::vector<int> range(int begin, int end);
Mat vstack(std::initializer_list<Mat> blocks, int cols);
Mat hstack(std::initializer_list<Mat> blocks, int rows);

}  // namespace weylkit
