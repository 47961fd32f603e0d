#include "weylkit/system.hpp"

#include <algorithm>
#include <cmath>

#include "weylkit/error.hpp"
#include "weylkit/propagator.hpp"

namespace weylkit {

std::string endpoint_kind(const Endpoint& e) {
  if (std::holds_alternative<Regular>(e)) return "regular";
  if (std::holds_alternative<ConstantTail>(e)) return "constant_tail";
  return "abstract_form";
}

SymmetricSystem SymmetricSystem::make(BlockSignature sig, double a, Endpoint endpoint, MatrixSampler B,
                                      MatrixSampler Delta) {
  SymmetricSystem s;
  s.sig = BlockSignature::make(sig.nu_plus, sig.nu_hat);
  s.a = a;
  s.endpoint = std::move(endpoint);
  s.B = std::move(B);
  s.Delta = std::move(Delta);
  s.J = build_J(s.sig);
  const int n = s.sig.n();
  if (s.B.rows() != n || s.B.cols() != n || s.Delta.rows() != n || s.Delta.cols() != n)
    fail(Errc::ShapeMismatch, "coefficient shape does not match the signature");
  if (auto* r = std::get_if<Regular>(&s.endpoint)) {
    if (!std::isfinite(r->b) || r->b <= a) fail(Errc::ShapeMismatch, "regular endpoint must satisfy a < b < inf");
  } else if (auto* c = std::get_if<ConstantTail>(&s.endpoint)) {
    if (c->t0 < a) fail(Errc::ShapeMismatch, "tail start t0 lies left of a");
    if (c->B_inf.rows() != n || c->B_inf.cols() != n || c->Delta_inf.rows() != n || c->Delta_inf.cols() != n)
      fail(Errc::ShapeMismatch, "tail coefficient shape mismatch");
  } else {
    const auto& f = std::get<AbstractForm>(s.endpoint);
    if (f.t_cut <= a) fail(Errc::ShapeMismatch, "t_cut must exceed a");
    if (f.Omega.rows() != n || f.Omega.cols() != n) fail(Errc::ShapeMismatch, "Omega_b must be n x n");
    if ((f.Omega - f.Omega.adjoint()).norm() > 1e-12 * std::max(1.0, f.Omega.norm()))
      fail(Errc::NonHermitian, "declared Omega_b is not Hermitian");
  }
  return s;
}

double SymmetricSystem::right() const {
  return std::visit(
      [](const auto& e) -> double {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, Regular>)
          return e.b;
        else if constexpr (std::is_same_v<T, ConstantTail>)
          return e.t0;
        else
          return e.t_cut;
      },
      endpoint);
}

Mat SymmetricSystem::B_at(double t) const {
  if (auto* c = std::get_if<ConstantTail>(&endpoint); c && t >= c->t0) return c->B_inf;
  return B(t);
}

Mat SymmetricSystem::Delta_at(double t) const {
  if (auto* c = std::get_if<ConstantTail>(&endpoint); c && t >= c->t0) return c->Delta_inf;
  return Delta(t);
}

Mat SymmetricSystem::generator(double t, cd lambda) const { return -J * (B_at(t) + lambda * Delta_at(t)); }

bool SymmetricSystem::coefficients_constant() const { return B.is_constant() && Delta.is_constant(); }

CoefficientReport validate_coefficients(const SymmetricSystem& sys, const std::vector<double>& grid) {
  CoefficientReport rep;
  for (double t : grid) {
    const Mat b = sys.B_at(t), d = sys.Delta_at(t);
    rep.B_hermiticity = std::max(rep.B_hermiticity, spectral_norm(b - b.adjoint()) / 2.0);
    rep.Delta_hermiticity = std::max(rep.Delta_hermiticity, spectral_norm(d - d.adjoint()) / 2.0);
    rep.Delta_negativity = std::max(rep.Delta_negativity, std::max(0.0, -min_eigenvalue(d)));
  }
  rep.max_residual = std::max({rep.B_hermiticity, rep.Delta_hermiticity, rep.Delta_negativity});
  return rep;
}

bool check_definite(const SymmetricSystem& sys, const std::vector<cd>& lambdas, const std::vector<double>& grid,
                    double tol) {
  const int n = sys.n();
  std::vector<double> ts = grid;
  std::sort(ts.begin(), ts.end());
  for (cd lam : lambdas) {
    Mat stacked(n * static_cast<int>(ts.size()), n);
    const auto vals = propagate_to(sys, lam, Mat::Identity(n, n), sys.a, ts);
    for (std::size_t i = 0; i < ts.size(); ++i)
      stacked.middleRows(static_cast<int>(i) * n, n) = psd_sqrt(sys.Delta_at(ts[i])) * vals[i];
    Eigen::JacobiSVD<Mat> svd(stacked);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(s.size() - 1) <= tol * s(0)) return false;
  }
  return true;
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out;
  if (count == 1) return {lo};
  for (int k = 0; k < count; ++k) out.push_back(lo + (hi - lo) * k / (count - 1));
  return out;
}

}  // namespace weylkit
