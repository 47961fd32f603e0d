#include "weylkit/blockspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "weylkit/error.hpp"

namespace weylkit {

BlockSignature BlockSignature::make(int nu_plus, int nu_hat) {
  if (nu_plus < 0 || nu_hat < 0 || nu_plus + nu_plus + nu_hat < 1)
    fail(Errc::ShapeMismatch, "invalid block signature");
  return BlockSignature{nu_plus, nu_hat};
}

Mat build_J(const BlockSignature& sig) {
  const int p = sig.nu_plus, h = sig.nu_hat, n = sig.n();
  Mat J = Mat::Zero(n, n);
  for (int k = 0; k < p; ++k) {
    J(k, p + h + k) = -1.0;
    J(p + h + k, k) = 1.0;
  }
  for (int k = 0; k < h; ++k) J(p + k, p + k) = I_unit;
  return J;
}

double spectral_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

Inertia inertia(const Mat& h, double tol) {
  if (h.rows() != h.cols()) fail(Errc::ShapeMismatch, "inertia of a non-square matrix");
  Inertia out;
  if (h.rows() == 0) return out;
  const double scale = spectral_norm(h);
  if ((h - h.adjoint()).norm() > tol * std::max(scale, 1e-300) && (h - h.adjoint()).norm() > 1e-14)
    fail(Errc::NonHermitian, "matrix is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<Mat> es(herm_part(h), Eigen::EigenvaluesOnly);
  const double cut = tol * scale;
  for (int k = 0; k < h.rows(); ++k) {
    const double ev = es.eigenvalues()(k);
    if (ev > cut)
      ++out.pos;
    else if (ev < -cut)
      ++out.neg;
    else
      ++out.zero;
  }
  return out;
}

Mat im_part(const Mat& m) { return (m - m.adjoint()) / (2.0 * I_unit); }
Mat herm_part(const Mat& m) { return 0.5 * (m + m.adjoint()); }

double min_eigenvalue(const Mat& hermitian) {
  if (hermitian.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(herm_part(hermitian), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double nevanlinna_defect(const std::vector<std::pair<cd, Mat>>& samples, double pair_tol) {
  double defect = 0.0;
  for (const auto& [lam, m] : samples) {
    const double ev = min_eigenvalue(lam.imag() * im_part(m));
    if (ev < 0) defect += -ev;
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      if (std::abs(samples[i].first - std::conj(samples[j].first)) <= pair_tol * (1.0 + std::abs(samples[i].first))) {
        defect += (samples[j].second.adjoint() - samples[i].second).norm();
      }
    }
  }
  return defect;
}

Mat psd_sqrt(const Mat& psd) {
  Eigen::SelfAdjointEigenSolver<Mat> es(herm_part(psd));
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.cast<cd>().asDiagonal() * es.eigenvectors().adjoint();
}

Mat null_space(const Mat& a, double rel_tol) {
  const int n = static_cast<int>(a.cols());
  if (a.rows() == 0) return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cut = rel_tol * std::max(s.size() ? s(0) : 0.0, 1e-300);
  int rank = 0;
  for (int k = 0; k < s.size(); ++k)
    if (s(k) > cut) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

Mat left_null_space(const Mat& a, double rel_tol) {
  return null_space(a.adjoint(), rel_tol).adjoint();
}

double condition_number(const Mat& a) {
  if (a.size() == 0) return 1.0;
  Eigen::JacobiSVD<Mat> svd(a);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

Mat select_rows(const Mat& a, const std::vector<int>& idx) {
  Mat out(static_cast<int>(idx.size()), a.cols());
  for (std::size_t k = 0; k < idx.size(); ++k) out.row(static_cast<int>(k)) = a.row(idx[k]);
  return out;
}

Mat select_cols(const Mat& a, const std::vector<int>& idx) {
  Mat out(a.rows(), static_cast<int>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) out.col(static_cast<int>(k)) = a.col(idx[k]);
  return out;
}

std::vector<int> range(int begin, int end) {
  std::vector<int> out;
  for (int k = begin; k < end; ++k) out.push_back(k);
  return out;
}

Mat vstack(std::initializer_list<Mat> blocks, int cols) {
  int rows = 0;
  for (const auto& b : blocks) rows += static_cast<int>(b.rows());
  Mat out(rows, cols);
  int r = 0;
  for (const auto& b : blocks) {
    if (b.rows() == 0) continue;
    if (b.cols() != cols) fail(Errc::ShapeMismatch, "vstack column mismatch");
    out.middleRows(r, b.rows()) = b;
    r += static_cast<int>(b.rows());
  }
  return out;
}

Mat hstack(std::initializer_list<Mat> blocks, int rows) {
  int cols = 0;
  for (const auto& b : blocks) cols += static_cast<int>(b.cols());
  Mat out(rows, cols);
  int c = 0;
  for (const auto& b : blocks) {
    if (b.cols() == 0) continue;
    if (b.rows() != rows) fail(Errc::ShapeMismatch, "hstack row mismatch");
    out.middleCols(c, b.cols()) = b;
    c += static_cast<int>(b.cols());
  }
  return out;
}

}  // namespace weylkit
