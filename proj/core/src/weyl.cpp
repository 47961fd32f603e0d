#include "weylkit/weyl.hpp"

#include <algorithm>
#include <cmath>

#include "weylkit/error.hpp"

namespace weylkit {
namespace {

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Mat p_hat(const BlockSignature& sig) {
  Mat P = Mat::Zero(sig.nu_minus(), sig.nu_minus());
  for (int k = 0; k < sig.nu_hat; ++k) P(sig.nu_plus + k, sig.nu_plus + k) = 1.0;
  return P;
}

// q × ν₋ selector of the Ĥ₂ coordinates of H0.
Mat hat2_selector(const DecomposingTriplet& t) {
  Mat S = Mat::Zero(t.q, t.sig.nu_minus());
  for (int k = 0; k < t.q; ++k) S(k, t.p1 + k) = 1.0;
  return S;
}

Mat checked_inverse(const Mat& a, Errc code, const std::string& what) {
  if (a.size() == 0) return a;
  if (condition_number(a) > 1e12) fail(code, what + " is numerically singular");
  return a.inverse();
}

Mat beta_of(const Problem& p, const SolutionBasis& b) { return p.triplet.joint(b.at_a(), b.b_data()); }

// Rows and right-hand side of the boundary conditions shared by v_τ on both
// half-planes: Γ1a v = −P_H and, with Ĥ₁ present, i(Γ̂a1 − Γ̂b) v = P_Ĥ₁.
std::pair<Mat, Mat> fixed_rows(const DecomposingTriplet& t) {
  const int p = t.sig.nu_plus, m = t.sig.nu_minus(), cols = t.n + t.nb;
  Mat rows = Mat::Zero(p + t.h1, cols), rhs = Mat::Zero(p + t.h1, m);
  rows.topRows(p) = t.G1a;
  rhs.block(0, 0, p, p) = -Mat::Identity(p, p);
  if (t.h1 > 0) {
    rows.bottomRows(t.h1) = I_unit * (t.Gha1() - t.Ghb.topRows(t.h1));
    rhs.block(p, p, t.h1, t.h1) = Mat::Identity(t.h1, t.h1);
  }
  return {rows, rhs};
}

}  // namespace

Problem Problem::make(SymmetricSystem sys, const Mat& U) {
  Problem p;
  p.form = build_endpoint_form(sys);
  p.U = make_U(sys.sig, U);
  p.triplet = build_triplet(sys, p.U, p.form, classify_case(sys.sig, p.form));
  p.sys = std::move(sys);
  return p;
}

Mat BoundaryParameter::D0(cd lambda) const {
  switch (kind) {
    case TauKind::Tau0: return Mat::Identity(K, K);
    case TauKind::Truncated: {
      Mat d = Mat::Zero(K, K);
      d.topLeftCorner(q, q) = Mat::Identity(q, q);
      d.bottomRightCorner(K - q, K - q) = D0_user(lambda);
      return d;
    }
    case TauKind::General: return D0_user(lambda);
  }
  return {};
}

Mat BoundaryParameter::D1(cd lambda) const {
  switch (kind) {
    case TauKind::Tau0: return Mat::Zero(K, c);
    case TauKind::Truncated: {
      Mat d = Mat::Zero(K, c);
      d.bottomRows(K - q) = D1_user(lambda);
      return d;
    }
    case TauKind::General: return D1_user(lambda);
  }
  return {};
}

Mat BoundaryParameter::C(cd lambda) const {
  const cd lc = std::conj(lambda);
  const Mat d0s = D0(lc).adjoint(), d1s = D1(lc).adjoint();
  // Range of τ₊(λ) written in the coordinates (K-data, 𝒞_b-data); the 𝓗₂
  // rows of K are the hat2 and Ĥ_b blocks.
  Mat W(K + c, K);
  W.topRows(q) = I_unit * d0s.topRows(q);
  W.middleRows(q, c) = d1s;
  W.middleRows(q + c, hb) = I_unit * d0s.bottomRows(hb);
  W.bottomRows(c) = -d0s.middleRows(q, c);
  return left_null_space(W);
}

BoundaryParameter make_tau(const DecomposingTriplet& t, TauKind kind, LambdaSampler D0, LambdaSampler D1) {
  BoundaryParameter tau;
  tau.kind = kind;
  tau.K = t.tau_dim();
  tau.q = t.q;
  tau.c = t.c;
  tau.hb = t.hb;
  tau.D0_user = std::move(D0);
  tau.D1_user = std::move(D1);
  if (kind == TauKind::Tau0) return tau;
  if (!tau.D0_user || !tau.D1_user) fail(Errc::ShapeMismatch, "boundary parameter needs both D0 and D1");
  const cd probe(0.0, -1.0);
  const Mat d0 = tau.D0_user(probe), d1 = tau.D1_user(probe);
  const int rows = kind == TauKind::Truncated ? tau.K - tau.q : tau.K;
  if (d0.rows() != rows || d0.cols() != rows || d1.rows() != rows || d1.cols() != tau.c)
    fail(Errc::ShapeMismatch, "boundary parameter blocks have the wrong shape (expected D0 " +
                                  std::to_string(rows) + "x" + std::to_string(rows) + ", D1 " + std::to_string(rows) +
                                  "x" + std::to_string(tau.c) + ")");
  return tau;
}

BoundaryParameter tau_from_endpoint_rows(const DecomposingTriplet& t, const Mat& K) {
  const Mat G = vstack({t.form.G0b, t.form.G1b}, t.nb);
  if (G.rows() != G.cols() || K.rows() != t.c || K.cols() != t.nb)
    fail(Errc::ShapeMismatch, "endpoint rows need a square [Γ0b; Γ1b] and c rows");
  const Mat DD = K * checked_inverse(G, Errc::SingularBoundaryMatrix, "[Γ0b; Γ1b]");
  const Mat d0 = DD.leftCols(t.c), d1 = DD.rightCols(t.c);
  if (t.q == 0 && t.hb == 0)
    return make_tau(t, TauKind::General, constant_lambda_sampler(d0), constant_lambda_sampler(d1));
  Mat D0 = Mat::Identity(t.tau_dim(), t.tau_dim()), D1 = Mat::Zero(t.tau_dim(), t.c);
  D0.block(t.q, t.q, t.c, t.c) = d0;
  D1.middleRows(t.q, t.c) = d1;
  return make_tau(t, TauKind::General, constant_lambda_sampler(D0), constant_lambda_sampler(D1));
}

double holomorphy_defect(const LambdaSampler& f, cd lambda, double h) {
  const Mat dx = (f(lambda + h) - f(lambda - h)) / (2 * h);
  const Mat dy = (f(lambda + I_unit * h) - f(lambda - I_unit * h)) / (2 * h);
  return max_abs(0.5 * (dx + I_unit * dy));
}

Mat solve_Z(const Problem& p, const SolutionBasis& basis, cd lambda, double* residual) {
  const DecomposingTriplet& t = p.triplet;
  const Mat beta = beta_of(p, basis);
  const bool upper = lambda.imag() > 0;
  const Mat rows = upper ? Mat(t.E1.transpose() * t.Gamma0 * beta) : Mat(t.Gamma0 * beta);
  if (rows.rows() != rows.cols())
    fail(Errc::ConsistencyError, "L² solution space has dimension " + std::to_string(rows.cols()) + ", expected " +
                                     std::to_string(rows.rows()));
  const Mat Z = checked_inverse(rows, Errc::SingularBoundaryMatrix, "boundary interpolation matrix");
  if (residual) *residual = max_abs(rows * Z - Mat::Identity(rows.rows(), rows.rows()));
  return Z;
}

WeylData weyl_data(const Problem& p, cd lambda, double block_tol) {
  const DecomposingTriplet& t = p.triplet;
  WeylData w;
  w.lambda = lambda;
  w.upper = lambda.imag() > 0;
  w.basis = l2_basis(p.sys, lambda, p.mode_tol);
  w.Z = solve_Z(p, w.basis, lambda, &w.z_residual);
  const Mat beta = beta_of(p, w.basis);
  const int k = w.basis.columns, nm = t.sig.nu_minus(), p1 = t.p1, q = t.q, K = t.tau_dim();
  const Mat rowsA = vstack({t.G0a, t.Gha}, t.n + t.nb) * beta;
  const Mat iPh = 0.5 * I_unit * p_hat(t.sig);
  Mat expect_m0, expect_Phi, expect_Psi, expect_Mdot;
  WeylBlocks& bl = w.blocks;
  if (w.upper) {
    w.c_v0 = Mat::Zero(k, nm);
    w.c_v0.leftCols(p1) = w.Z.leftCols(p1);
    w.c_u = w.Z.rightCols(t.c);
    w.M = (t.E1 * t.Gamma1 - I_unit * t.P2 * t.Gamma0) * beta * w.Z;
    Mat R = vstack({t.Gha2(), -t.G1b}, t.n + t.nb);
    if (t.tag == CaseTag::Case2) R = vstack({R, -I_unit * t.Ghb}, t.n + t.nb);
    R = R * beta;
    w.m0 = rowsA * w.c_v0 + iPh;
    w.Phi = rowsA * w.c_u;
    Mat sel = Mat::Zero(K, nm);
    sel.topRows(q) = hat2_selector(t);
    w.Psi = R * w.c_v0 + I_unit * sel;
    w.Mdot = R * w.c_u;
    bl.M1 = w.M.block(0, 0, p1, p1);
    bl.N1 = w.M.block(p1, 0, q, p1);
    bl.M3 = w.M.block(p1 + q, 0, K - q, p1);
    bl.M2 = w.M.block(0, p1, p1, t.c);
    bl.N2 = w.M.block(p1, p1, q, t.c);
    bl.M4 = w.M.block(p1 + q, p1, K - q, t.c);
    expect_m0 = Mat::Zero(nm, nm);
    expect_m0.topLeftCorner(p1, p1) = bl.M1;
    expect_m0.bottomLeftCorner(q, p1) = bl.N1;
    expect_m0.bottomRightCorner(q, q) = 0.5 * I_unit * Mat::Identity(q, q);
    expect_Phi = vstack({bl.M2, bl.N2}, t.c);
    expect_Psi = Mat::Zero(K, nm);
    expect_Psi.topLeftCorner(q, p1) = bl.N1;
    expect_Psi.topRightCorner(q, q) = I_unit * Mat::Identity(q, q);
    expect_Psi.bottomLeftCorner(K - q, p1) = bl.M3;
    expect_Mdot = vstack({bl.N2, bl.M4}, t.c);
  } else {
    w.c_v0 = w.Z.leftCols(nm);
    w.c_u = w.Z.rightCols(K);
    w.M = t.Gamma1 * beta * w.Z;
    const Mat G1b = t.G1b * beta;
    w.m0 = rowsA * w.c_v0 + iPh;
    w.Phi = rowsA * w.c_u;
    w.Psi = -G1b * w.c_v0;
    w.Mdot = -G1b * w.c_u;
    bl.M1 = w.M.block(0, 0, p1, p1);
    bl.N1 = w.M.block(0, p1, p1, q);
    bl.M2 = w.M.block(0, p1 + q, p1, K - q);
    bl.M3 = w.M.block(p1, 0, t.c, p1);
    bl.N2 = w.M.block(p1, p1, t.c, q);
    bl.M4 = w.M.block(p1, p1 + q, t.c, K - q);
    expect_m0 = Mat::Zero(nm, nm);
    expect_m0.topLeftCorner(p1, p1) = bl.M1;
    expect_m0.topRightCorner(p1, q) = bl.N1;
    expect_m0.bottomRightCorner(q, q) = -0.5 * I_unit * Mat::Identity(q, q);
    expect_Phi = Mat::Zero(nm, K);
    expect_Phi.topLeftCorner(p1, q) = bl.N1;
    expect_Phi.topRightCorner(p1, K - q) = bl.M2;
    expect_Phi.bottomLeftCorner(q, q) = -I_unit * Mat::Identity(q, q);
    expect_Psi = hstack({bl.M3, bl.N2}, t.c);
    expect_Mdot = hstack({bl.N2, bl.M4}, t.c);
  }
  const double scale = std::max(1.0, max_abs(w.M));
  w.block_residual = std::max({max_abs(w.m0 - expect_m0), max_abs(w.Phi - expect_Phi), max_abs(w.Psi - expect_Psi),
                               max_abs(w.Mdot - expect_Mdot)}) /
                     scale;
  if (w.block_residual > block_tol)
    fail(Errc::ConsistencyError, "X-matrix blocks disagree with the Weyl-block identities (" +
                                     std::to_string(w.block_residual) + ")");
  return w;
}

double symmetry_residual(const WeylData& lower, const WeylData& upper) {
  if (std::abs(lower.lambda - std::conj(upper.lambda)) > 1e-14 * std::max(1.0, std::abs(lower.lambda)))
    fail(Errc::PreconditionFailed, "symmetry check needs a conjugate pair");
  const double scale = std::max(1.0, max_abs(lower.m0));
  return std::max({max_abs(upper.m0.adjoint() - lower.m0), max_abs(upper.Phi.adjoint() - lower.Psi),
                   max_abs(upper.Psi.adjoint() - lower.Phi), max_abs(upper.Mdot.adjoint() - lower.Mdot)}) /
         scale;
}

double base_condition_residual(const Problem& p, const WeylData& w) {
  const DecomposingTriplet& t = p.triplet;
  const Mat beta = beta_of(p, w.basis);
  const int nm = t.sig.nu_minus(), pl = t.sig.nu_plus;
  Mat expect = Mat::Zero(pl, nm);
  expect.leftCols(pl) = -Mat::Identity(pl, pl);
  double r = std::max(w.z_residual, max_abs(t.G1a * beta * w.c_v0 - expect));
  if (!w.upper) {
    // iΓ̂a2 u₋ is the identity on the hat2 block, Γ̃0b u₋ on the rest.
    const Mat rows = vstack({I_unit * t.Gha2(), t.Gbtilde()}, t.n + t.nb) * beta * w.c_u;
    r = std::max(r, max_abs(rows - Mat::Identity(rows.rows(), rows.cols())));
  } else {
    r = std::max(r, max_abs(t.G0b * beta * w.c_u - Mat::Identity(t.c, t.c)));
    r = std::max(r, max_abs(t.G0b * beta * w.c_v0));
  }
  return r;
}

MTau m_tau(const Problem& p, const BoundaryParameter& tau, const WeylData& w) {
  const DecomposingTriplet& t = p.triplet;
  const cd lam = w.lambda;
  MTau out;
  const Mat beta = beta_of(p, w.basis);
  const int cols = t.n + t.nb;
  const Mat rowsA = vstack({t.G0a, t.Gha}, cols) * beta;
  const Mat iPh = 0.5 * I_unit * p_hat(t.sig);
  auto [frows, frhs] = fixed_rows(t);
  Mat crow, crhs;
  const Mat hat_sel = hat2_selector(t);
  if (!w.upper) {
    const Mat D0 = tau.D0(lam), D1 = tau.D1(lam);
    const Mat Qi = checked_inverse(D0 - D1 * w.Mdot, Errc::IllPosedParameter, "D0 − D1 Ṁ₋");
    const Mat X = Qi * D1 * w.Psi;
    out.m = w.m0 + w.Phi * X;
    out.c_vtau = w.c_v0 + w.c_u * X;
    crow = D0 * vstack({I_unit * t.Gha2(), t.Gbtilde()}, cols) + D1 * t.G1b;
    Mat top = Mat::Zero(tau.K, t.sig.nu_minus());
    top.topRows(t.q) = hat_sel;
    crhs = D0 * top;
  } else {
    const cd lc = std::conj(lam);
    const Mat d0s = tau.D0(lc).adjoint(), d1s = tau.D1(lc).adjoint();
    const Mat T = -d1s * checked_inverse(d0s - w.Mdot * d1s, Errc::IllPosedParameter, "D0*(λ̄) − Ṁ₊ D1*(λ̄)");
    out.m = w.m0 - w.Phi * T * w.Psi;
    out.c_vtau = w.c_v0 - w.c_u * T * w.Psi;
    const Mat C = tau.C(lam);
    const Mat C0 = C.leftCols(tau.K), C1 = C.rightCols(t.c);
    crow = C0 * vstack({I_unit * t.Gha2(), t.Gbtilde()}, cols) + C1 * t.G1b;
    Mat top = Mat::Zero(tau.K, t.sig.nu_minus());
    top.topRows(t.q) = hat_sel;
    crhs = C0 * top;
  }
  const Mat A = vstack({frows, crow}, cols) * beta;
  const Mat rhs = vstack({frhs, crhs}, t.sig.nu_minus());
  if (A.rows() != A.cols())
    fail(Errc::ConsistencyError, "boundary conditions of v_τ do not determine it (" + std::to_string(A.rows()) +
                                     " conditions, " + std::to_string(A.cols()) + " unknowns)");
  const Mat c_direct = checked_inverse(A, Errc::IllPosedParameter, "v_τ boundary system") * rhs;
  out.m_direct = rowsA * c_direct + iPh;
  const double scale = std::max(1.0, max_abs(out.m));
  out.agreement = max_abs(out.m - out.m_direct) / scale;
  out.condition_residual = max_abs(A * out.c_vtau - rhs) / std::max(1.0, max_abs(rhs));
  return out;
}

MTau m_tau(const Problem& p, const BoundaryParameter& tau, cd lambda) {
  return m_tau(p, tau, weyl_data(p, lambda));
}

SolutionBasis v_tau(const WeylData& w, const MTau& mt) { return w.basis.combine(mt.c_vtau); }

double lower_bound_margin(const Problem& p, const WeylData& w, const MTau& mt) {
  const SolutionBasis v = v_tau(w, mt);
  const Mat diff = im_part(mt.m) / w.lambda.imag() - gram(p.sys, v);
  return min_eigenvalue(herm_part(diff));
}

std::pair<double, double> triangularity(const Problem& p, const Mat& m) {
  const DecomposingTriplet& t = p.triplet;
  const double ll = max_abs(m.block(t.p1, 0, t.q, t.p1));
  const double lr = max_abs(m.block(t.p1, t.p1, t.q, t.q) + 0.5 * I_unit * Mat::Identity(t.q, t.q));
  return {ll, lr};
}

Mat minimal_m(const Problem& p, cd lambda) {
  if (p.form.nu_b_plus != 0) fail(Errc::PreconditionFailed, "minimal_m needs ν_{b+} = 0");
  return weyl_data(p, lambda).m0;
}

double displacement_residual(const Problem& p, cd lambda, cd mu) {
  if (p.form.nu_b_plus != 0 || p.form.nu_b_minus != 0)
    fail(Errc::PreconditionFailed, "displacement identity needs ν_{b±} = 0");
  const WeylData wl = weyl_data(p, lambda), wm = weyl_data(p, mu);
  const Mat G = cross_gram(p.sys, wl.basis.combine(wl.c_v0), wm.basis.combine(wm.c_v0));
  const Mat lhs = wm.m0 - wl.m0.adjoint();
  return max_abs(lhs - (mu - std::conj(lambda)) * G) / std::max(1.0, max_abs(lhs));
}

}  // namespace weylkit
