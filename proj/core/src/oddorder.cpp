#include "weylkit/oddorder.hpp"

#include <algorithm>
#include <cmath>

#include "weylkit/error.hpp"

namespace weylkit {
namespace {

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

struct ScalarCoeffs {
  int m;
  std::vector<double> p, q;
  double s;  // √q0
};

ScalarCoeffs scalar_coeffs(const OddOrderExpression& e, int sign) {
  if (!e.scalar_constant()) fail(Errc::UnsupportedSubclass, "reduction needs scalar constant coefficients");
  if (e.m < 1 || e.m > 2) fail(Errc::UnsupportedSubclass, "reduction is available for orders 3 and 5");
  ScalarCoeffs c{e.m, {}, {}, 0.0};
  for (int k = 0; k <= e.m; ++k) {
    c.p.push_back(sign * e.p[k](0.0)(0, 0).real());
    c.q.push_back(sign * e.q[k](0.0)(0, 0).real());
  }
  if (!(c.q[0] > 0)) fail(Errc::SingularQ0, "q0 must be nonzero");
  c.s = std::sqrt(c.q[0]);
  return c;
}

int sign_of_q0(const OddOrderExpression& e) {
  Eigen::SelfAdjointEigenSolver<Mat> es(herm_part(e.q[0](0.0)));
  int pos = 0, neg = 0;
  for (int k = 0; k < es.eigenvalues().size(); ++k) (es.eigenvalues()(k) > 0 ? pos : neg)++;
  return neg > pos ? -1 : 1;
}

Mat jet_map(const ScalarCoeffs& c) {
  const cd i = I_unit;
  if (c.m == 1) {
    Mat T = Mat::Zero(3, 3);
    T(0, 0) = 1.0;
    T(1, 1) = c.s;
    T(2, 0) = -i * c.q[1] / 2.0;
    T(2, 1) = c.p[0];
    T(2, 2) = i * c.q[0];
    return T;
  }
  Mat T = Mat::Zero(5, 5);
  T(0, 0) = 1.0;
  T(1, 1) = 1.0;
  T(2, 2) = c.s;
  // y^{[4]}
  T(3, 0) = -i * c.q[2] / 2.0;
  T(3, 1) = c.p[1];
  T(3, 2) = i * c.q[1];
  T(3, 3) = -c.p[0];
  T(3, 4) = -i * c.q[0];
  // y^{[3]}
  T(4, 1) = -i * c.q[1] / 2.0;
  T(4, 2) = c.p[0];
  T(4, 3) = i * c.q[0];
  return T;
}

Mat bold_B(const ScalarCoeffs& c) {
  const cd i = I_unit;
  const double s = c.s;
  if (c.m == 1) {
    Mat B = Mat::Zero(3, 3);
    B(0, 0) = -c.p[1];
    B(0, 1) = -i * c.q[1] / (2 * s);
    B(1, 0) = i * c.q[1] / (2 * s);
    B(1, 1) = -c.p[0] / c.q[0];
    B(1, 2) = B(2, 1) = 1.0 / s;
    return B;
  }
  Mat B = Mat::Zero(5, 5);
  B(0, 0) = -c.p[2];
  B(0, 1) = -i * c.q[2] / 2.0;
  B(1, 0) = i * c.q[2] / 2.0;
  B(1, 1) = -c.p[1];
  B(1, 2) = -i * c.q[1] / (2 * s);
  B(2, 1) = i * c.q[1] / (2 * s);
  B(2, 2) = -c.p[0] / c.q[0];
  B(1, 3) = B(3, 1) = 1.0;
  B(2, 4) = B(4, 2) = 1.0 / s;
  return B;
}

std::vector<cd> coefficients(const ScalarCoeffs& c) {
  std::vector<cd> out(2 * c.m + 2);
  for (int k = 0; k <= c.m; ++k) {
    const double sg = k % 2 == 0 ? 1.0 : -1.0;
    out[2 * k + 1] = sg * I_unit * c.q[c.m - k];
    out[2 * k] = sg * c.p[c.m - k];
  }
  return out;
}

}  // namespace

OddOrderExpression OddOrderExpression::constant_scalar(int m, std::vector<double> p, std::vector<double> q) {
  if (static_cast<int>(p.size()) != m + 1 || static_cast<int>(q.size()) != m + 1)
    fail(Errc::ShapeMismatch, "need m + 1 coefficients p_k and q_k");
  OddOrderExpression e;
  e.m = m;
  e.dimH = 1;
  for (int k = 0; k <= m; ++k) {
    e.p.push_back(MatrixSampler::constant(Mat::Constant(1, 1, p[k])));
    e.q.push_back(MatrixSampler::constant(Mat::Constant(1, 1, q[k])));
  }
  return e;
}

bool OddOrderExpression::scalar_constant() const {
  if (dimH != 1) return false;
  for (const auto& s : p)
    if (!s.is_constant()) return false;
  for (const auto& s : q)
    if (!s.is_constant()) return false;
  return true;
}

void OddOrderExpression::validate(const std::vector<double>& grid) const {
  if (m < 1 || static_cast<int>(p.size()) != m + 1 || static_cast<int>(q.size()) != m + 1)
    fail(Errc::ShapeMismatch, "need m + 1 coefficients p_k and q_k");
  for (double t : grid) {
    for (const auto* set : {&p, &q})
      for (const auto& s : *set) {
        const Mat v = s(t);
        if (v.rows() != dimH || v.cols() != dimH) fail(Errc::ShapeMismatch, "coefficient has the wrong size");
        if (max_abs(v - v.adjoint()) > 1e-12 * std::max(1.0, max_abs(v)))
          fail(Errc::NonHermitian, "coefficient is not Hermitian");
      }
    Eigen::SelfAdjointEigenSolver<Mat> es(herm_part(q[0](t)));
    const double top = es.eigenvalues().cwiseAbs().maxCoeff();
    if (es.eigenvalues().cwiseAbs().minCoeff() <= 1e-12 * std::max(top, 1e-300))
      fail(Errc::SingularQ0, "q0 is not invertible at t = " + std::to_string(t));
  }
}

void factor_q0(const Mat& q0, Mat& Q1, Mat& Qhat, Mat& Q2) {
  const int d = static_cast<int>(q0.rows());
  Eigen::SelfAdjointEigenSolver<Mat> es(herm_part(q0));
  std::vector<Vec> pos, neg;
  for (int k = d - 1; k >= 0; --k)
    if (es.eigenvalues()(k) > 0) pos.push_back(std::sqrt(es.eigenvalues()(k)) * es.eigenvectors().col(k));
  for (int k = 0; k < d; ++k)
    if (es.eigenvalues()(k) < 0) neg.push_back(std::sqrt(-es.eigenvalues()(k)) * es.eigenvectors().col(k));
  if (neg.size() > pos.size()) fail(Errc::PreconditionFailed, "factor_q0 expects ν₀₋ ≤ ν₀₊");
  const int pairs = static_cast<int>(neg.size()), surplus = static_cast<int>(pos.size()) - pairs;
  const double r2 = std::sqrt(0.5);
  Q1.resize(pairs, d);
  Q2.resize(pairs, d);
  Qhat.resize(surplus, d);
  for (int k = 0; k < pairs; ++k) {
    const Vec a = pos[k].conjugate(), b = neg[k].conjugate();
    Q1.row(k) = (r2 * (a + b)).transpose();
    Q2.row(k) = (-I_unit * r2 * (a - b)).transpose();
  }
  for (int k = 0; k < surplus; ++k) Qhat.row(k) = pos[pairs + k].conjugate().transpose();
}

QFactorization q0_inertia_factorization(const OddOrderExpression& e, const std::vector<double>& grid) {
  e.validate(grid);
  QFactorization f;
  f.sign = sign_of_q0(e);
  bool varies = false;
  const Mat q_first = e.q[0](grid.empty() ? 0.0 : grid.front());
  for (double t : grid) {
    const Mat q0 = f.sign * e.q[0](t);
    if (max_abs(q0 - f.sign * q_first) > 1e-12) varies = true;
    Eigen::SelfAdjointEigenSolver<Mat> es(herm_part(q0));
    const auto& ev = es.eigenvalues();
    int pos = 0, neg = 0;
    for (int k = 0; k < ev.size(); ++k) (ev(k) > 0 ? pos : neg)++;
    if (f.ts.empty()) {
      f.nu0_plus = pos;
      f.nu0_minus = neg;
    } else if (pos != f.nu0_plus || neg != f.nu0_minus) {
      fail(Errc::SingularQ0, "inertia of q0 changes on the grid");
    }
    if (varies)
      for (int k = 0; k + 1 < ev.size(); ++k)
        if (ev(k + 1) - ev(k) <= 1e-9 * std::max(1.0, ev.cwiseAbs().maxCoeff()))
          fail(Errc::EigenCrossing, "eigenvalues of q0 meet at t = " + std::to_string(t));
    Mat Q1, Qh, Q2;
    factor_q0(q0, Q1, Qh, Q2);
    const Mat lhs = I_unit * q0;
    const Mat rhs = -Q1.adjoint() * Q2 + Q2.adjoint() * Q1 + I_unit * Qh.adjoint() * Qh;
    f.identity_residual = std::max(f.identity_residual, max_abs(lhs - rhs));
    f.ts.push_back(t);
    f.Q1.push_back(Q1);
    f.Qhat.push_back(Qh);
    f.Q2.push_back(Q2);
  }
  return f;
}

std::vector<cd> symbol_coefficients(const OddOrderExpression& e) {
  return coefficients(scalar_coeffs(e, 1 * (sign_of_q0(e) > 0 ? 1 : -1)));
}

QuasiDerivatives quasi_derivatives(const OddOrderExpression& e, const Vec& jet) {
  const int sign = sign_of_q0(e);
  const ScalarCoeffs c = scalar_coeffs(e, sign);
  const int m = c.m;
  if (jet.size() != 2 * m + 2) fail(Errc::ShapeMismatch, "jet must hold y, ..., y^{(2m+1)}");
  const cd i = I_unit;
  QuasiDerivatives out;
  out.y = Vec::Zero(2 * m + 2);
  for (int k = 0; k < m; ++k) out.y(k) = jet(k);
  const Mat T = jet_map(c);
  const Vec bold = T * jet.head(2 * m + 1);
  if (m == 1) {
    out.y(1) = jet(1);
    out.y(2) = bold(2);
    // l[y] = −(y^{[2]})′ + (i q1/2) y′ + p1 y
    const cd d2 = i * c.q[0] * jet(3) + c.p[0] * jet(2) - i * c.q[1] / 2.0 * jet(1);
    out.y(3) = -d2 + i * c.q[1] / 2.0 * jet(1) + c.p[1] * jet(0);
  } else {
    out.y(2) = jet(2);
    out.y(3) = bold(4);
    out.y(4) = bold(3);
    const cd d4 = -i * c.q[0] * jet(5) - c.p[0] * jet(4) + i * c.q[1] * jet(3) + c.p[1] * jet(2) -
                  i * c.q[2] / 2.0 * jet(1);
    out.y(5) = -d4 + i * c.q[2] / 2.0 * jet(1) + c.p[2] * jet(0);
  }
  out.y *= static_cast<double>(sign);
  out.y.head(m + 1) *= static_cast<double>(sign);
  out.bold = bold;
  return out;
}

Reduction reduce_to_system(const OddOrderExpression& e, double a, Endpoint endpoint) {
  Reduction r;
  r.expr = e;
  r.sign = sign_of_q0(e);
  const ScalarCoeffs c = scalar_coeffs(e, r.sign);
  const BlockSignature sig = BlockSignature::make(c.m, 1);
  const Mat B = bold_B(c);
  Mat D = Mat::Zero(sig.n(), sig.n());
  D(0, 0) = 1.0;
  if (auto* tail = std::get_if<ConstantTail>(&endpoint)) {
    tail->B_inf = B;
    tail->Delta_inf = D;
  }
  r.sys = SymmetricSystem::make(sig, a, endpoint, MatrixSampler::constant(B), MatrixSampler::constant(D));
  r.jet_to_bold = jet_map(c);
  return r;
}

double reduction_fidelity(const Reduction& r, cd lambda, double t_end, const std::vector<Vec>& jets, int samples) {
  const ScalarCoeffs c = scalar_coeffs(r.expr, r.sign);
  const cd lam = static_cast<double>(r.sign) * lambda;
  const std::vector<cd> ck = coefficients(c);
  const int N = 2 * c.m + 1;
  Mat comp = Mat::Zero(N, N);
  for (int k = 0; k + 1 < N; ++k) comp(k, k + 1) = 1.0;
  for (int k = 0; k < N; ++k) comp(N - 1, k) = -ck[k] / ck[N];
  comp(N - 1, 0) += lam / ck[N];
  const LinearOde scalar([comp](double) { return comp; }, true);
  const auto ts = linspace(r.sys.a, t_end, samples);
  double worst = 0.0;
  for (const Vec& j0 : jets) {
    if (j0.size() != N) fail(Errc::ShapeMismatch, "initial jets hold y, ..., y^{(2m)}");
    const auto jv = scalar.solve_at(Mat(j0), r.sys.a, ts);
    const auto sv = propagate_to(r.sys, lam, Mat(r.jet_to_bold * j0), r.sys.a, ts);
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const Mat expect = r.jet_to_bold * jv[k];
      worst = std::max(worst, max_abs(sv[k] - expect) / std::max(1.0, max_abs(expect)));
    }
  }
  if (worst > 1e-6) fail(Errc::MatchFailure, "reduced system does not reproduce l[y] = λy");
  return worst;
}

int scalar_decaying_count(const OddOrderExpression& e, cd lambda) {
  const int sign = sign_of_q0(e);
  const ScalarCoeffs c = scalar_coeffs(e, sign);
  const std::vector<cd> ck = coefficients(c);
  const int N = 2 * c.m + 1;
  Mat comp = Mat::Zero(N, N);
  for (int k = 0; k + 1 < N; ++k) comp(k, k + 1) = 1.0;
  for (int k = 0; k < N; ++k) comp(N - 1, k) = -ck[k] / ck[N];
  comp(N - 1, 0) += static_cast<double>(sign) * lambda / ck[N];
  Eigen::ComplexEigenSolver<Mat> es(comp, false);
  int count = 0;
  for (int k = 0; k < N; ++k)
    if (es.eigenvalues()(k).real() < 0) ++count;
  return count;
}

OddDeficiency odd_deficiency(const OddOrderExpression& e, int nu_b_plus, int nu_b_minus,
                             const std::vector<double>& grid) {
  const QFactorization f = q0_inertia_factorization(e, grid);
  OddDeficiency d;
  d.d_plus = e.m * e.dimH + f.nu0_minus + nu_b_plus;
  d.d_minus = e.m * e.dimH + f.nu0_plus + nu_b_minus;
  // Indices of the relabeled expression −l at −λ.
  if (f.sign < 0) std::swap(d.d_plus, d.d_minus);
  return d;
}

OddDeficiency odd_deficiency(const Reduction& r) {
  const EndpointForm form = build_endpoint_form(r.sys);
  const OddDeficiency d = odd_deficiency(r.expr, form.nu_b_plus, form.nu_b_minus, {r.sys.a});
  DeficiencyIndices n = deficiency_indices(r.sys);
  if (r.sign < 0) std::swap(n.n_plus, n.n_minus);
  if (n.n_plus != d.d_plus || n.n_minus != d.d_minus)
    fail(Errc::ConsistencyError, "deficiency formula disagrees with the reduced system");
  return d;
}

bool is_selfadjoint_pair(const Mat& C0, const Mat& C1, double tol) {
  if (C0.rows() != C1.rows() || C0.cols() != C1.cols() || C0.rows() != C0.cols()) return false;
  if (C0.size() == 0) return true;
  const double scale = std::max({1.0, max_abs(C0), max_abs(C1)});
  if (max_abs(C1 * C0.adjoint() - C0 * C1.adjoint()) > tol * scale * scale) return false;
  return condition_number(C0 + I_unit * C1) < 1e12 && condition_number(C0 - I_unit * C1) < 1e12;
}

SelfAdjointBC selfadjoint_bc(const Problem& p, const Mat& C0, const Mat& C1) {
  const DecomposingTriplet& t = p.triplet;
  if (t.tag != CaseTag::EqualIndices || !std::holds_alternative<Regular>(p.sys.endpoint))
    fail(Errc::PreconditionFailed, "self-adjoint conditions need equal indices and a regular endpoint");
  if (C0.rows() != t.c || C0.cols() != t.c || C1.rows() != t.c || C1.cols() != t.c)
    fail(Errc::ShapeMismatch, "C0 and C1 must be square on 𝒞_b");
  if (!is_selfadjoint_pair(C0, C1)) fail(Errc::NotSelfAdjointPair, "(C0, C1) is not a self-adjoint pair");
  SelfAdjointBC bc;
  bc.C0 = C0;
  bc.C1 = C1;
  bc.tau = make_tau(t, TauKind::General, constant_lambda_sampler(C0), constant_lambda_sampler(C1));
  bc.rows = vstack({t.G1a, t.Gha - t.Ghb, C0 * t.G0b + C1 * t.G1b}, t.n + t.nb);
  const int n = t.n;
  const Mat J = p.sys.J;
  Mat F = Mat::Zero(2 * n, 2 * n);
  F.topLeftCorner(n, n) = -J;
  F.bottomRightCorner(n, n) = J;
  const Mat N = null_space(bc.rows);
  bc.lagrangian_residual = max_abs(N.adjoint() * F * N);
  if (N.cols() != n) fail(Errc::ConsistencyError, "boundary conditions do not have rank n");
  return bc;
}

std::vector<cd> bc_eigenvalues(const Problem& p, const SelfAdjointBC& bc, double lo, double hi, int scan) {
  const int n = p.sys.n();
  auto det = [&](cd lam) {
    const Mat Y = fundamental_matrix(p.sys, lam, std::get<Regular>(p.sys.endpoint).b);
    const Mat D = bc.rows * vstack({Mat::Identity(n, n), Y}, n);
    return D.determinant();
  };
  std::vector<double> xs = linspace(lo, hi, scan);
  std::vector<double> mag;
  for (double x : xs) mag.push_back(std::abs(det(cd(x, 0.0))));
  std::vector<cd> roots;
  for (int k = 1; k + 1 < scan; ++k) {
    if (!(mag[k] <= mag[k - 1] && mag[k] <= mag[k + 1])) continue;
    cd z(xs[k], 0.0);
    const double scale = std::max(1.0, std::abs(z));
    bool ok = false;
    for (int it = 0; it < 60; ++it) {
      const double h = 1e-6 * scale;
      const cd f = det(z), df = (det(z + h) - det(z - h)) / (2 * h);
      if (df == cd(0.0)) break;
      const cd step = f / df;
      z -= step;
      if (std::abs(step) <= 1e-12 * scale) {
        ok = true;
        break;
      }
    }
    if (!ok || z.real() < lo || z.real() > hi) continue;
    const bool dup = std::any_of(roots.begin(), roots.end(),
                                 [&](cd r) { return std::abs(r - z) <= 1e-8 * scale; });
    if (!dup) roots.push_back(z);
  }
  std::sort(roots.begin(), roots.end(), [](cd a, cd b) { return a.real() < b.real(); });
  return roots;
}

}  // namespace weylkit
