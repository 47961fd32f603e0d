#include "weylkit/propagator.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "weylkit/error.hpp"
#include "weylkit/quadrature.hpp"

namespace weylkit {
namespace {

LinearOde make_ode(const SymmetricSystem& sys, cd lambda, const OdeOptions& opts) {
  return LinearOde([&sys, lambda](double t) { return sys.generator(t, lambda); }, sys.coefficients_constant(), opts);
}

double effective_tol(cd lambda, double mode_tol) { return mode_tol * std::min(1.0, std::abs(lambda.imag())); }

Mat matrix_sign(const Mat& A) {
  Mat X = A;
  for (int it = 0; it < 100; ++it) {
    const Mat Xn = 0.5 * (X + X.inverse());
    const double diff = (Xn - X).norm();
    X = Xn;
    if (diff <= 1e-14 * X.norm()) break;
  }
  return X;
}

// Orthonormal basis of the invariant subspace of A for Re κ < 0.
Mat stable_subspace(const Mat& A, int k) {
  const int n = static_cast<int>(A.rows());
  const Mat P = 0.5 * (Mat::Identity(n, n) - matrix_sign(A));
  Eigen::ColPivHouseholderQR<Mat> qr(P);
  const Mat Q = qr.householderQ() * Mat::Identity(n, n);
  return Q.leftCols(k);
}

Mat solve_sylvester(const Mat& Sa, const Mat& Sb, const Mat& rhs) {
  // Sa* G + G Sb = rhs, column-major vectorisation.
  const int p = static_cast<int>(Sa.rows()), q = static_cast<int>(Sb.rows());
  Mat K = Mat::Zero(p * q, p * q);
  const Mat SaH = Sa.adjoint();
  for (int j = 0; j < q; ++j) {
    K.block(j * p, j * p, p, p) += SaH;
    for (int l = 0; l < q; ++l) K.block(j * p, l * p, p, p) += Sb(l, j) * Mat::Identity(p, p);
  }
  const Vec r = Eigen::Map<const Vec>(rhs.data(), p * q);
  const Vec g = K.fullPivLu().solve(r);
  return Eigen::Map<const Mat>(g.data(), p, q);
}

struct ModelSpaces {
  Mat W;
  Mat plus, minus;  // orthonormal columns
};

ModelSpaces model_spaces(const SymmetricSystem& sys) {
  const auto& f = std::get<AbstractForm>(sys.endpoint);
  ModelSpaces m;
  m.W = f.Omega + I_unit * sys.J;
  Eigen::SelfAdjointEigenSolver<Mat> es(herm_part(m.W));
  const double cut = 1e-10 * std::max(1.0, spectral_norm(m.W));
  std::vector<int> pos, neg;
  int kernel = 0;
  for (int k = 0; k < sys.n(); ++k) {
    const double ev = es.eigenvalues()(k);
    if (ev >= -cut) pos.push_back(k);
    if (ev <= cut) neg.push_back(k);
    if (std::abs(ev) <= cut) ++kernel;
  }
  const EndpointForm form = endpoint_form_from_omega(f.Omega);
  const int rank_omega = form.nu_b_plus + form.nu_b_minus;
  if (kernel != rank_omega || static_cast<int>(pos.size()) != sys.sig.nu_plus + form.nu_b_plus ||
      static_cast<int>(neg.size()) != sys.sig.nu_minus() + form.nu_b_minus)
    fail(Errc::UnsupportedEndpoint,
         "declared endpoint form is not realised by a tail with Ω + iJ of the required inertia");
  m.plus = select_cols(es.eigenvectors(), pos);
  m.minus = select_cols(es.eigenvectors(), neg);
  return m;
}

Mat tail_at(const SymmetricSystem& sys, cd lambda) {
  const auto& c = std::get<ConstantTail>(sys.endpoint);
  return -sys.J * (c.B_inf + lambda * c.Delta_inf);
}

}  // namespace

std::vector<Mat> propagate_to(const SymmetricSystem& sys, cd lambda, const Mat& Y0, double t0,
                              const std::vector<double>& ts, const OdeOptions& opts) {
  return make_ode(sys, lambda, opts).solve_at(Y0, t0, ts);
}

Mat propagate(const SymmetricSystem& sys, cd lambda, const Mat& Y0, double t0, double t1, const OdeOptions& opts) {
  return make_ode(sys, lambda, opts).solve(Y0, t0, t1);
}

DenseSolution propagate_dense(const SymmetricSystem& sys, cd lambda, const Mat& Y0, double t0, double t1,
                              const OdeOptions& opts) {
  return make_ode(sys, lambda, opts).solve_dense(Y0, t0, t1);
}

Mat fundamental_matrix(const SymmetricSystem& sys, cd lambda, double t) {
  if (t < sys.a) fail(Errc::PreconditionFailed, "t lies left of a");
  return propagate(sys, lambda, Mat::Identity(sys.n(), sys.n()), sys.a, t);
}

double wronskian_drift(const SymmetricSystem& sys, cd lambda, const std::vector<double>& ts) {
  const int n = sys.n();
  const auto Y = propagate_to(sys, lambda, Mat::Identity(n, n), sys.a, ts);
  const auto Yc = propagate_to(sys, std::conj(lambda), Mat::Identity(n, n), sys.a, ts);
  double worst = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i)
    worst = std::max(worst, (Yc[i].adjoint() * sys.J * Y[i] - sys.J).norm());
  return worst;
}

PhiPsi phi_psi(const SymmetricSystem& sys, const BoundaryOperatorU& U, cd lambda, double t) {
  const Mat init = hstack({phi_initial(U), psi_initial(U)}, sys.n());
  const Mat y = propagate(sys, lambda, init, sys.a, t);
  const int m = sys.sig.nu_minus();
  return PhiPsi{y.leftCols(m), y.rightCols(m)};
}

Mat SolutionBasis::eval(double t) const {
  if (tail_ == Tail::Constant && t > right_) {
    const Mat E = (S_ * cd(t - right_)).exp();
    return X_ * E * coeff_;
  }
  return dense_.eval(std::clamp(t, a_, right_)) * coeff_;
}

Mat SolutionBasis::b_data() const {
  if (tail_ == Tail::Constant) return Mat(0, columns);
  return eval(right_);
}

SolutionBasis SolutionBasis::combine(const Mat& C) const {
  SolutionBasis out = *this;
  out.coeff_ = coeff_ * C;
  out.columns = static_cast<int>(C.cols());
  return out;
}

std::vector<double> SolutionBasis::knots() const {
  std::vector<double> k = dense_.knots();
  if (k.size() < 2) k = {a_, right_};
  return k;
}

SolutionBasis SolutionBasis::from_dense(cd lambda, DenseSolution dense, double a, double right, Mat coeff) {
  SolutionBasis b;
  b.lambda = lambda;
  b.a_ = a;
  b.right_ = right;
  b.dense_ = std::move(dense);
  b.columns = static_cast<int>(coeff.cols());
  b.coeff_ = std::move(coeff);
  return b;
}

Mat cross_gram(const SymmetricSystem& sys, const SolutionBasis& A, const SolutionBasis& B) {
  std::vector<double> knots = A.knots();
  const auto kb = B.knots();
  knots.insert(knots.end(), kb.begin(), kb.end());
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end(),
                          [](double x, double y) { return std::abs(x - y) <= 1e-14 * std::max(1.0, std::abs(x)); }),
              knots.end());
  const double right = std::min(A.right(), B.right());
  knots.erase(std::remove_if(knots.begin(), knots.end(), [&](double x) { return x < A.a() || x > right; }),
              knots.end());
  if (knots.empty() || knots.front() > A.a()) knots.insert(knots.begin(), A.a());
  if (knots.back() < right) knots.push_back(right);
  Mat g = Mat::Zero(A.columns, B.columns);
  if (knots.size() >= 2 && right > A.a())
    g = gauss_legendre_panels(
        [&](double t) -> Mat { return A.eval(t).adjoint() * sys.Delta_at(t) * B.eval(t); }, knots);
  using Tail = SolutionBasis::Tail;
  if (A.tail_ == Tail::Constant && B.tail_ == Tail::Constant) {
    const Mat rhs = -A.X_.adjoint() * A.Delta_inf_ * B.X_;
    g += A.coeff_.adjoint() * solve_sylvester(A.S_, B.S_, rhs) * B.coeff_;
  } else if (A.tail_ == Tail::Model && B.tail_ == Tail::Model) {
    const cd denom = B.lambda - std::conj(A.lambda);
    if (std::abs(denom) > 1e-14) g += I_unit * A.b_data().adjoint() * A.W_ * B.b_data() / denom;
  }
  return g;
}

ModeCount count_modes(const Mat& A, cd lambda, double mode_tol) {
  Eigen::ComplexEigenSolver<Mat> es(A, true);
  ModeCount mc;
  const double tol = effective_tol(lambda, mode_tol);
  for (int k = 0; k < A.rows(); ++k) {
    const cd kap = es.eigenvalues()(k);
    if (kap.real() < -tol) {
      ++mc.decaying;
      mc.rates.push_back(kap);
    } else if (kap.real() > tol) {
      ++mc.growing;
    } else {
      mc.neutral = true;
    }
  }
  if (A.rows() > 0) mc.jordan = condition_number(es.eigenvectors()) > 1e8;
  return mc;
}

SolutionBasis full_basis(const SymmetricSystem& sys, cd lambda) {
  const int n = sys.n();
  SolutionBasis b;
  b.lambda = lambda;
  b.a_ = sys.a;
  b.right_ = sys.right();
  b.dense_ = propagate_dense(sys, lambda, Mat::Identity(n, n), sys.a, sys.right());
  b.coeff_ = Mat::Identity(n, n);
  b.columns = n;
  return b;
}

SolutionBasis l2_basis(const SymmetricSystem& sys, cd lambda, double mode_tol) {
  if (lambda.imag() == 0.0) fail(Errc::PreconditionFailed, "l2_basis needs Im λ ≠ 0");
  if (std::holds_alternative<Regular>(sys.endpoint)) return full_basis(sys, lambda);
  SolutionBasis b;
  b.lambda = lambda;
  b.a_ = sys.a;
  b.right_ = sys.right();
  Mat X;
  if (sys.is_tail()) {
    const auto& c = std::get<ConstantTail>(sys.endpoint);
    const Mat A = tail_at(sys, lambda);
    const ModeCount mc = count_modes(A, lambda, mode_tol);
    if (mc.neutral) fail(Errc::IndeterminateMode, "tail generator has an eigenvalue with |Re κ| ≤ mode_tol");
    X = stable_subspace(A, mc.decaying);
    b.tail_ = SolutionBasis::Tail::Constant;
    b.X_ = X;
    b.S_ = X.adjoint() * A * X;
    b.Delta_inf_ = c.Delta_inf;
    b.decay_rates = mc.rates;
    b.jordan = mc.jordan;
  } else {
    const ModelSpaces m = model_spaces(sys);
    X = lambda.imag() > 0 ? m.plus : m.minus;
    b.tail_ = SolutionBasis::Tail::Model;
    b.W_ = m.W;
  }
  b.dense_ = propagate_dense(sys, lambda, X, sys.right(), sys.a);
  b.columns = static_cast<int>(X.cols());
  b.coeff_ = Mat::Identity(b.columns, b.columns);
  return b;
}

DeficiencyIndices deficiency_indices(const SymmetricSystem& sys, double mode_tol) {
  DeficiencyIndices d;
  auto dim_at = [&](cd lam) -> int {
    if (std::holds_alternative<Regular>(sys.endpoint)) return sys.n();
    if (sys.is_tail()) {
      const ModeCount mc = count_modes(tail_at(sys, lam), lam, mode_tol);
      if (mc.neutral) fail(Errc::IndeterminateMode, "tail generator has a neutral mode");
      return mc.decaying;
    }
    const ModelSpaces m = model_spaces(sys);
    return static_cast<int>(lam.imag() > 0 ? m.plus.cols() : m.minus.cols());
  };
  d.n_plus = dim_at(I_unit);
  d.n_minus = dim_at(-I_unit);
  if (sys.is_tail()) {
    if (d.n_plus < sys.sig.nu_plus || d.n_minus < sys.sig.nu_minus())
      fail(Errc::ConsistencyError, "tail mode count below the inertia of J");
    try {
      build_endpoint_form(sys);
    } catch (const Error& e) {
      if (e.code() == Errc::UnsupportedEndpoint) return d;
      throw;
    }
  }
  const EndpointForm form = build_endpoint_form(sys);
  if (d.n_plus != sys.sig.nu_plus + form.nu_b_plus || d.n_minus != sys.sig.nu_minus() + form.nu_b_minus)
    fail(Errc::ConsistencyError, "deficiency indices disagree with ν± + ν_b±");
  return d;
}

}  // namespace weylkit
