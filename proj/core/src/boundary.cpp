#include "weylkit/boundary.hpp"

#include <algorithm>
#include <cmath>

#include "weylkit/error.hpp"

namespace weylkit {
namespace {

double scale_of(const Mat& m) { return std::max(1.0, m.squaredNorm()); }

int count_decaying(const Mat& A, double mode_tol, bool& neutral) {
  Eigen::ComplexEigenSolver<Mat> es(A, false);
  int count = 0;
  neutral = false;
  for (int k = 0; k < A.rows(); ++k) {
    const double re = es.eigenvalues()(k).real();
    if (re < -mode_tol)
      ++count;
    else if (re <= mode_tol)
      neutral = true;
  }
  return count;
}

}  // namespace

Mat BoundaryOperatorU::block(int k) const {
  const int p = sig.nu_plus, h = sig.nu_hat;
  const int col_off[3] = {0, p, p + h};
  const int col_len[3] = {p, h, p};
  const int c = (k - 1) % 3;
  if (k >= 1 && k <= 3) return U.block(0, col_off[c], h, col_len[c]);
  if (k >= 4 && k <= 6) return U.block(h, col_off[c], p, col_len[c]);
  if (k >= 7 && k <= 9) {
    if (!extended()) fail(Errc::PreconditionFailed, "U has not been extended");
    return Ut.block(0, col_off[c], p, col_len[c]);
  }
  fail(Errc::ShapeMismatch, "block index must lie in 1..9");
}

RelationResiduals relation_residuals(const BlockSignature& sig, const Mat& U) {
  const Mat J = build_J(sig);
  const int h = sig.nu_hat, p = sig.nu_plus;
  const Mat Rh = U.topRows(h), R1 = U.bottomRows(p);
  RelationResiduals r;
  if (h > 0) {
    r.hat_hat = (Rh * J * Rh.adjoint() - I_unit * Mat::Identity(h, h)).norm();
    r.one_hat = (R1 * J * Rh.adjoint()).norm();
  }
  r.one_one = (R1 * J * R1.adjoint()).norm();
  return r;
}

BoundaryOperatorU validate_U(const BlockSignature& sig, const Mat& U, double tol) {
  if (U.rows() != sig.nu_minus() || U.cols() != sig.n())
    fail(Errc::ShapeMismatch, "U must be (nu_minus x n)");
  Eigen::JacobiSVD<Mat> svd(U);
  const auto& s = svd.singularValues();
  if (s(s.size() - 1) <= 1e-10 * s(0)) fail(Errc::RelationViolated, "rank: ran U is not all of Ĥ ⊕ H");
  BoundaryOperatorU out;
  out.sig = sig;
  out.U = U;
  out.residuals = relation_residuals(sig, U);
  const double sc = tol * scale_of(U);
  if (out.residuals.hat_hat > sc)
    fail(Errc::RelationViolated, "hat_hat: i u2 u2* − u1 u3* + u3 u1* ≠ iI");
  if (out.residuals.one_hat > sc) fail(Errc::RelationViolated, "one_hat: i u5 u2* − u4 u3* + u6 u1* ≠ 0");
  if (out.residuals.one_one > sc) fail(Errc::RelationViolated, "one_one: i u5 u5* + u6 u4* − u4 u6* ≠ 0");
  return out;
}

BoundaryOperatorU extend_U(BoundaryOperatorU u, double tol) {
  const BlockSignature& sig = u.sig;
  const int p = sig.nu_plus, h = sig.nu_hat, n = sig.n();
  const Mat J = build_J(sig);
  const Mat& R = u.U;
  const Mat R1 = R.bottomRows(p);
  // S J R* = [0, −I] fixes S modulo rows annihilating J R*; the quadratic
  // condition S J S* = 0 is then met by a correction along R1.
  const Mat C = J * R.adjoint();
  Mat T = Mat::Zero(p, h + p);
  T.rightCols(p) = -Mat::Identity(p, p);
  const Mat Sp = T * (C.adjoint() * C).ldlt().solve(C.adjoint());
  const Mat A = Sp * J * Sp.adjoint();
  const Mat S = Sp - 0.5 * A * R1;
  u.Ut.resize(n, n);
  u.Ut.topRows(p) = S;
  u.Ut.bottomRows(h + p) = R;
  u.extension_residual = (u.Ut.adjoint() * J * u.Ut - J).norm();
  if (u.extension_residual > tol * scale_of(u.Ut))
    fail(Errc::ExtensionFailure, "J-unitary completion residual " + std::to_string(u.extension_residual));
  return u;
}

BoundaryOperatorU make_U(const BlockSignature& sig, const Mat& U) { return extend_U(validate_U(sig, U)); }

Mat separated_U(const BlockSignature& sig, const Mat& B) {
  const int p = sig.nu_plus, h = sig.nu_hat;
  if (B.rows() != p || B.cols() != p) fail(Errc::ShapeMismatch, "angle matrix must be nu_plus x nu_plus");
  Eigen::SelfAdjointEigenSolver<Mat> es(herm_part(B));
  const Mat V = es.eigenvectors();
  Eigen::VectorXcd cs(p), sn(p);
  for (int k = 0; k < p; ++k) {
    cs(k) = std::cos(es.eigenvalues()(k));
    sn(k) = std::sin(es.eigenvalues()(k));
  }
  Mat U = Mat::Zero(h + p, sig.n());
  U.block(0, p, h, h) = Mat::Identity(h, h);
  U.block(h, 0, p, p) = V * cs.asDiagonal() * V.adjoint();
  U.block(h, p + h, p, p) = V * sn.asDiagonal() * V.adjoint();
  return U;
}

GammaA gamma_a(const BoundaryOperatorU& U, const Vec& ya) {
  if (!U.extended()) fail(Errc::PreconditionFailed, "U has not been extended");
  const int p = U.sig.nu_plus, h = U.sig.nu_hat;
  const Vec g = U.Ut * ya;
  return GammaA{g.head(p), g.segment(p, h), g.tail(p)};
}

cd gamma_a_identity(const BoundaryOperatorU& U, const Vec& y, const Vec& z) {
  const Mat J = build_J(U.sig);
  const GammaA gy = gamma_a(U, y), gz = gamma_a(U, z);
  const cd jyz = z.dot(J * y);
  return jyz + gz.g0.dot(gy.g1) - gz.g1.dot(gy.g0) - I_unit * gz.ghat.dot(gy.ghat);
}

Mat phi_initial(const BoundaryOperatorU& U) {
  const Mat J = build_J(U.sig);
  const Mat inv = -J * U.Ut.adjoint() * J;
  return inv.leftCols(U.sig.nu_minus());
}

Mat psi_initial(const BoundaryOperatorU& U) {
  const int p = U.sig.nu_plus, h = U.sig.nu_hat, m = U.sig.nu_minus(), n = U.sig.n();
  const Mat J = build_J(U.sig);
  const Mat inv = -J * U.Ut.adjoint() * J;
  Mat rhs = Mat::Zero(n, m);
  for (int k = 0; k < h; ++k) rhs(p + k, p + k) = -0.5 * I_unit;
  for (int k = 0; k < p; ++k) rhs(m + k, k) = -1.0;
  return inv * rhs;
}

cd EndpointForm::bracket(const Vec& xi_y, const Vec& xi_z) const {
  if (data_dim == 0) return 0.0;
  return I_unit * xi_z.dot(Omega * xi_y);
}

EndpointForm endpoint_form_from_omega(const Mat& Omega, double tol) {
  EndpointForm f;
  f.data_dim = static_cast<int>(Omega.rows());
  f.Omega = Omega;
  if (f.data_dim == 0) {
    f.G0b = f.Ghb = f.G1b = Mat(0, 0);
    return f;
  }
  if ((Omega - Omega.adjoint()).norm() > 1e-12 * std::max(1.0, Omega.norm()))
    fail(Errc::NonHermitian, "endpoint form matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(herm_part(Omega));
  const double cut = tol * std::max(spectral_norm(Omega), 1e-300);
  std::vector<Vec> pos, neg;
  for (int k = f.data_dim - 1; k >= 0; --k) {
    const double ev = es.eigenvalues()(k);
    if (ev > cut) pos.push_back(std::sqrt(ev) * es.eigenvectors().col(k));
  }
  for (int k = 0; k < f.data_dim; ++k) {
    const double ev = es.eigenvalues()(k);
    if (ev < -cut) neg.push_back(std::sqrt(-ev) * es.eigenvectors().col(k));
  }
  f.nu_b_plus = static_cast<int>(pos.size());
  f.nu_b_minus = static_cast<int>(neg.size());
  f.dim_C = std::min(f.nu_b_plus, f.nu_b_minus);
  f.dim_Hb = std::abs(f.nu_b_plus - f.nu_b_minus);
  f.sign = (f.nu_b_plus > f.nu_b_minus) - (f.nu_b_plus < f.nu_b_minus);
  const double r2 = std::sqrt(0.5);
  f.G0b.resize(f.dim_C, f.data_dim);
  f.G1b.resize(f.dim_C, f.data_dim);
  for (int k = 0; k < f.dim_C; ++k) {
    const Vec a = pos[k].conjugate(), b = neg[k].conjugate();
    f.G0b.row(k) = (r2 * (a + b)).transpose();
    f.G1b.row(k) = (-I_unit * r2 * (a - b)).transpose();
  }
  const auto& surplus = f.sign > 0 ? pos : neg;
  f.Ghb.resize(f.dim_Hb, f.data_dim);
  for (int k = 0; k < f.dim_Hb; ++k) f.Ghb.row(k) = surplus[f.dim_C + k].conjugate().transpose();
  return f;
}

EndpointForm build_endpoint_form(const SymmetricSystem& sys) {
  if (std::holds_alternative<Regular>(sys.endpoint)) return endpoint_form_from_omega(-I_unit * sys.J);
  if (auto* f = std::get_if<AbstractForm>(&sys.endpoint)) return endpoint_form_from_omega(f->Omega);
  const auto& c = std::get<ConstantTail>(sys.endpoint);
  bool neutral_p = false, neutral_m = false;
  const int np = count_decaying(-sys.J * (c.B_inf + I_unit * c.Delta_inf), 1e-6, neutral_p);
  const int nm = count_decaying(-sys.J * (c.B_inf - I_unit * c.Delta_inf), 1e-6, neutral_m);
  if (neutral_p || neutral_m) fail(Errc::IndeterminateMode, "tail generator has a neutral mode at λ = ±i");
  if (np != sys.sig.nu_plus || nm != sys.sig.nu_minus())
    fail(Errc::UnsupportedEndpoint, "constant tail with nonzero endpoint inertia (decaying modes " +
                                        std::to_string(np) + ", " + std::to_string(nm) + ")");
  return endpoint_form_from_omega(Mat(0, 0));
}

double endpoint_identity_residual(const EndpointForm& f) {
  if (f.data_dim == 0) return 0.0;
  const Mat rhs = I_unit * static_cast<double>(f.sign) * f.Ghb.adjoint() * f.Ghb - f.G0b.adjoint() * f.G1b +
                  f.G1b.adjoint() * f.G0b;
  return (I_unit * f.Omega - rhs).cwiseAbs().maxCoeff();
}

std::string case_name(CaseTag c) {
  switch (c) {
    case CaseTag::Case1: return "Case1";
    case CaseTag::Case2: return "Case2";
    case CaseTag::EqualIndices: return "EqualIndices";
  }
  return "?";
}

CaseTag classify_case(const BlockSignature& sig, const EndpointForm& form) {
  const int d = form.nu_b_plus - form.nu_b_minus;
  const int nh = sig.nu_hat;
  if (nh == d) return CaseTag::EqualIndices;
  if (nh > d && d > 0) return CaseTag::Case1;
  if (d <= 0) return CaseTag::Case2;
  fail(Errc::OutOfScope, "n_- < n_+ (endpoint inertia difference exceeds dim Ĥ)");
}

Mat DecomposingTriplet::Gha1() const { return Gha.topRows(h1); }
Mat DecomposingTriplet::Gha2() const { return Gha.bottomRows(sig.nu_hat - h1); }

Mat DecomposingTriplet::Gbtilde() const {
  if (tag == CaseTag::Case2) return vstack({G0b, Ghb}, n + nb);
  return G0b;
}

Mat DecomposingTriplet::joint(const Mat& ya, const Mat& xi) const {
  if (nb == 0) return ya;
  return vstack({ya, xi}, static_cast<int>(ya.cols()));
}

DecomposingTriplet build_triplet(const SymmetricSystem& sys, const BoundaryOperatorU& U, const EndpointForm& form,
                                 CaseTag tag) {
  if (classify_case(sys.sig, form) != tag) fail(Errc::CaseMismatch, "requested case does not match the indices");
  if (!(U.sig == sys.sig)) fail(Errc::ShapeMismatch, "U signature differs from the system");
  if (!U.extended()) fail(Errc::PreconditionFailed, "U has not been extended");
  DecomposingTriplet t;
  t.tag = tag;
  t.sig = sys.sig;
  t.form = form;
  t.U = U;
  t.n = sys.n();
  t.nb = form.data_dim;
  const int p = sys.sig.nu_plus, nh = sys.sig.nu_hat, cols = t.n + t.nb;
  auto on_a = [&](const Mat& rows) {
    Mat out = Mat::Zero(rows.rows(), cols);
    out.leftCols(t.n) = rows;
    return out;
  };
  auto on_b = [&](const Mat& rows) {
    Mat out = Mat::Zero(rows.rows(), cols);
    if (t.nb > 0) out.rightCols(t.nb) = rows;
    return out;
  };
  t.G0a = on_a(U.Ut.topRows(p));
  t.Gha = on_a(U.Ut.middleRows(p, nh));
  t.G1a = on_a(U.Ut.bottomRows(p));
  t.G0b = on_b(form.G0b);
  t.Ghb = on_b(form.Ghb);
  t.G1b = on_b(form.G1b);
  t.c = form.dim_C;
  if (tag == CaseTag::Case2) {
    t.h1 = 0;
    t.hb = form.dim_Hb;
    t.p1 = p;
    t.q = nh;
    t.Gamma0 = vstack({-t.G1a, I_unit * t.Gha, t.G0b, t.Ghb}, cols);
    t.Gamma1 = vstack({t.G0a, -t.G1b}, cols);
  } else {
    t.h1 = form.dim_Hb;
    t.hb = 0;
    t.p1 = p + t.h1;
    t.q = nh - t.h1;
    const Mat a1 = t.Gha.topRows(t.h1), a2 = t.Gha.bottomRows(t.q);
    t.Gamma0 = vstack({-t.G1a, I_unit * (a1 - t.Ghb), I_unit * a2, t.G0b}, cols);
    t.Gamma1 = vstack({t.G0a, 0.5 * (a1 + t.Ghb), -t.G1b}, cols);
  }
  t.dim_H0 = static_cast<int>(t.Gamma0.rows());
  t.dim_H1 = static_cast<int>(t.Gamma1.rows());
  t.dim_H2 = t.dim_H0 - t.dim_H1;
  t.P2 = Mat::Zero(t.dim_H0, t.dim_H0);
  t.E1 = Mat::Zero(t.dim_H0, t.dim_H1);
  for (int k = 0; k < t.p1; ++k) t.E1(k, k) = 1.0;
  for (int k = 0; k < t.c; ++k) t.E1(t.p1 + t.q + k, t.p1 + k) = 1.0;
  for (int k = 0; k < t.q; ++k) t.P2(t.p1 + k, t.p1 + k) = 1.0;
  for (int k = 0; k < t.hb; ++k) t.P2(t.p1 + t.q + t.c + k, t.p1 + t.q + t.c + k) = 1.0;
  if (t.dim_H2 != t.q + t.hb) fail(Errc::ConsistencyError, "boundary space dimensions are inconsistent");
  if (t.dim_H1 > t.dim_H0) fail(Errc::ConsistencyError, "dim 𝓗₁ exceeds dim 𝓗₀");
  return t;
}

double green_identity_residual(const DecomposingTriplet& t, int pairs, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  const int cols = t.n + t.nb;
  const Mat J = build_J(t.sig);
  double worst = 0.0;
  for (int k = 0; k < pairs; ++k) {
    Vec f(cols), g(cols);
    for (int i = 0; i < cols; ++i) {
      f(i) = cd(nd(rng), nd(rng));
      g(i) = cd(nd(rng), nd(rng));
    }
    const Vec g0f = t.Gamma0 * f, g0g = t.Gamma0 * g;
    const Vec g1f = t.E1 * (t.Gamma1 * f), g1g = t.E1 * (t.Gamma1 * g);
    const cd lhs = g0g.dot(g1f) - g1g.dot(g0f) - I_unit * (t.P2 * g0g).dot(t.P2 * g0f);
    const Vec xf = f.tail(t.nb), xg = g.tail(t.nb);
    const cd rhs = t.form.bracket(xf, xg) - g.head(t.n).dot(J * f.head(t.n));
    worst = std::max(worst, std::abs(lhs - rhs) / (f.norm() * g.norm()));
  }
  return worst;
}

bool triplet_surjective(const DecomposingTriplet& t) {
  const Mat both = vstack({t.Gamma0, t.Gamma1}, t.n + t.nb);
  Eigen::JacobiSVD<Mat> svd(both);
  const auto& s = svd.singularValues();
  return s.size() > 0 && s(s.size() - 1) > 1e-10 * s(0);
}

}  // namespace weylkit
