#include "weylkit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "weylkit/error.hpp"
#include "weylkit/parallel.hpp"
#include "weylkit/quadrature.hpp"

namespace weylkit {
namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }
double trace_re(const Mat& m) { return m.size() ? m.trace().real() : 0.0; }

std::vector<double> knots_between(std::vector<double> base, double lo, double hi, int min_panels) {
  base.erase(std::remove_if(base.begin(), base.end(), [&](double x) { return x <= lo || x >= hi; }), base.end());
  base.insert(base.begin(), lo);
  base.push_back(hi);
  std::sort(base.begin(), base.end());
  return refine_knots(base, (hi - lo) / min_panels);
}

Mat as_col(const Vec& v) { return Mat(v); }

}  // namespace

Vec WeightedFunction::operator()(double t) const { return f(t); }

double delta_norm2(const SymmetricSystem& sys, const WeightedFunction& f, int panels) {
  if (f.hi <= f.lo) return 0.0;
  const Mat v = gauss_legendre_panels(
      [&](double t) -> Mat {
        const Vec ft = f(t);
        return Mat::Constant(1, 1, ft.dot(sys.Delta_at(t) * ft));
      },
      linspace(f.lo, f.hi, panels + 1));
  return v(0, 0).real();
}

GreenKernel::GreenKernel(const Problem& p, const BoundaryParameter& tau, cd lambda, double x_max)
    : p_(&p), lambda_(lambda), x_max_(x_max) {
  if (lambda.imag() == 0.0) fail(Errc::PreconditionFailed, "Green kernel needs Im λ ≠ 0");
  m_ = m_tau(p, tau, lambda).m;
  const Mat init = hstack({phi_initial(p.U), psi_initial(p.U)}, p.sys.n());
  sol_ = propagate_dense(p.sys, lambda, init, p.sys.a, x_max);
  sol_bar_ = propagate_dense(p.sys, std::conj(lambda), init, p.sys.a, x_max);
}

Mat GreenKernel::phi(double t) const { return sol_.eval(t).leftCols(p_->sys.sig.nu_minus()); }
Mat GreenKernel::phi_bar(double t) const { return sol_bar_.eval(t).leftCols(p_->sys.sig.nu_minus()); }

Mat GreenKernel::v(double t) const {
  const Mat y = sol_.eval(t);
  const int m = p_->sys.sig.nu_minus();
  return y.leftCols(m) * m_ + y.rightCols(m);
}

Mat GreenKernel::v_bar(double t) const {
  const Mat y = sol_bar_.eval(t);
  const int m = p_->sys.sig.nu_minus();
  return y.leftCols(m) * m_.adjoint() + y.rightCols(m);
}

Mat GreenKernel::operator()(double x, double t) const {
  if (x >= t) return v(x) * phi_bar(t).adjoint();
  return phi(x) * v_bar(t).adjoint();
}

std::vector<double> GreenKernel::knots() const {
  std::vector<double> k = sol_.knots();
  const auto kb = sol_bar_.knots();
  k.insert(k.end(), kb.begin(), kb.end());
  std::sort(k.begin(), k.end());
  return k;
}

Vec green_apply(const GreenKernel& g, const WeightedFunction& f, double x) {
  const SymmetricSystem& sys = g.problem().sys;
  const int m = static_cast<int>(g.m().rows());
  if (x > g.x_max() + 1e-12 || f.hi > g.x_max() + 1e-12)
    fail(Errc::PreconditionFailed, "evaluation beyond the kernel range");
  const auto base = g.knots();
  Mat F1 = Mat::Zero(m, 1), F2 = Mat::Zero(m, 1);
  const double split = std::clamp(x, f.lo, f.hi);
  if (split > f.lo)
    F1 = gauss_legendre_panels([&](double t) -> Mat { return g.phi_bar(t).adjoint() * sys.Delta_at(t) * as_col(f(t)); },
                               knots_between(base, f.lo, split, 8));
  if (split < f.hi)
    F2 = gauss_legendre_panels([&](double t) -> Mat { return g.v_bar(t).adjoint() * sys.Delta_at(t) * as_col(f(t)); },
                               knots_between(base, split, f.hi, 8));
  return g.v(x) * F1 + g.phi(x) * F2;
}

std::vector<Vec> green_apply(const GreenKernel& g, const WeightedFunction& f, const std::vector<double>& xs) {
  std::vector<Vec> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(green_apply(g, f, x));
  return out;
}

namespace {

struct CellWork {
  std::vector<Mat> F;  // per ε
  std::vector<Jump> jumps;
};

double jump_fraction(double s0, double lo, double hi, double eps) {
  return (std::atan((hi - s0) / eps) - std::atan((lo - s0) / eps)) / kPi;
}

Mat richardson(double e1, const Mat& F1, double e2, const Mat& F2) { return (e1 * F2 - e2 * F1) / (e1 - e2); }

// Zooms in on the maximiser of tr(−Im m(σ − iε)) with ε tied to the window;
// returns false when the window mass fades like a density.
bool locate_jump(const MSampler& m, double lo, double hi, double jump_tol, double loc_tol, Jump& out) {
  auto g = [&](double s, double eps) { return -trace_re(im_part(m(cd(s, -eps)))); };
  const int N = 20;
  double best = 0.5 * (lo + hi);
  for (int level = 0; level < 60; ++level) {
    const double width = hi - lo;
    const double scale = std::max(1.0, std::abs(best));
    if (width <= loc_tol * scale) break;
    const double eps = width / N;
    int kbest = 0;
    double gbest = -1.0;
    for (int k = 0; k <= N; ++k) {
      const double gv = g(lo + width * k / N, eps);
      if (gv > gbest) {
        gbest = gv;
        kbest = k;
      }
    }
    best = lo + width * kbest / N;
    if (level >= 2 && eps * gbest < 0.1 * jump_tol) return false;
    const double step = width / N;
    lo = best - step;
    hi = best + step;
  }
  const double scale = std::max(1.0, std::abs(best));
  const double ew = 1e-6 * scale;
  auto W = [&](double eps) -> Mat { return -eps * im_part(m(cd(best, -eps))); };
  const Mat w = herm_part(2.0 * W(ew) - W(2.0 * ew));
  if (trace_re(w) <= jump_tol) return false;
  out.location = best;
  out.weight = w;
  return true;
}

}  // namespace

DistributionFunction stieltjes_inversion(const MSampler& m, const std::vector<double>& grid,
                                         const StieltjesOptions& opts) {
  if (grid.size() < 2) fail(Errc::PreconditionFailed, "grid needs at least two points");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid[i + 1] > grid[i])) fail(Errc::PreconditionFailed, "grid must be strictly increasing");
  if (opts.eps.size() < 2) fail(Errc::PreconditionFailed, "ε schedule needs two values");
  for (std::size_t i = 0; i + 1 < opts.eps.size(); ++i)
    if (!(opts.eps[i + 1] < opts.eps[i])) fail(Errc::PreconditionFailed, "ε schedule must decrease");
  const int cells = static_cast<int>(grid.size()) - 1;
  const int ne = static_cast<int>(opts.eps.size());
  std::vector<CellWork> work(cells);

  parallel_for(cells, opts.workers, [&](int j) {
    std::vector<double> part{grid[j], grid[j + 1]};
    for (int e = 0; e < ne; ++e) {
      const double eps = opts.eps[e];
      std::vector<double> next;
      const QuadResult r = gauss_kronrod([&](double s) -> Mat { return im_part(m(cd(s, -eps))); }, part,
                                         opts.quad_abs, opts.quad_rel, 4000, &next);
      work[j].F.push_back(-r.value / kPi);
      part = std::move(next);
    }
  });

  const double e1 = opts.eps[ne - 2], e2 = opts.eps[ne - 1];
  std::vector<Mat> raw(cells);
  double total = 0.0;
  for (int j = 0; j < cells; ++j) {
    raw[j] = richardson(e1, work[j].F[ne - 2], e2, work[j].F[ne - 1]);
    total += std::max(0.0, trace_re(raw[j]));
  }

  DistributionFunction out;
  out.grid = grid;
  out.total_mass = total;
  const double jump_tol = opts.jump_tol_rel * total;
  if (opts.detect_jumps && total > 0.0) {
    parallel_for(cells, opts.workers, [&](int j) {
      if (trace_re(raw[j]) <= jump_tol) return;
      const double w = grid[j + 1] - grid[j];
      Jump jp;
      if (locate_jump(m, grid[j] - 0.05 * w, grid[j + 1] + 0.05 * w, jump_tol, opts.loc_tol, jp))
        work[j].jumps.push_back(jp);
    });
    for (int j = 0; j < cells; ++j)
      for (const Jump& jp : work[j].jumps) {
        const double tol = 1e3 * opts.loc_tol * std::max(1.0, std::abs(jp.location));
        const bool dup = std::any_of(out.jumps.begin(), out.jumps.end(),
                                     [&](const Jump& o) { return std::abs(o.location - jp.location) <= tol; });
        if (!dup) out.jumps.push_back(jp);
      }
    std::sort(out.jumps.begin(), out.jumps.end(),
              [](const Jump& a, const Jump& b) { return a.location < b.location; });
  }

  for (int j = 0; j < cells; ++j) {
    const double lo = grid[j], hi = grid[j + 1];
    Mat c1 = work[j].F[ne - 2], c2 = work[j].F[ne - 1];
    Mat assigned = Mat::Zero(c1.rows(), c1.cols());
    for (const Jump& jp : out.jumps) {
      c1 -= jump_fraction(jp.location, lo, hi, e1) * jp.weight;
      c2 -= jump_fraction(jp.location, lo, hi, e2) * jp.weight;
      const double tb = 10.0 * opts.loc_tol * std::max(1.0, std::abs(jp.location));
      if (std::abs(jp.location - lo) <= tb || std::abs(jp.location - hi) <= tb)
        assigned += 0.5 * jp.weight;
      else if (jp.location > lo && jp.location < hi)
        assigned += jp.weight;
    }
    Mat cont = herm_part(richardson(e1, c1, e2, c2));
    out.continuous.push_back(cont);
    out.increments.push_back(cont + assigned);
  }
  for (const Mat& inc : out.increments)
    if (inc.size() && min_eigenvalue(herm_part(inc)) < -1e-6 * std::max(1.0, max_abs(inc)))
      fail(Errc::NonMonotone, "extrapolated increment has a negative eigenvalue");
  return out;
}

std::vector<Vec> fourier(const Problem& p, const WeightedFunction& f, const std::vector<double>& s_grid,
                         int workers) {
  const int m = p.sys.sig.nu_minus();
  std::vector<Vec> out(s_grid.size(), Vec::Zero(m));
  if (f.hi <= f.lo) return out;
  const Mat init = phi_initial(p.U);
  parallel_for(static_cast<int>(s_grid.size()), workers, [&](int i) {
    const DenseSolution phi = propagate_dense(p.sys, cd(s_grid[i], 0.0), init, p.sys.a, f.hi);
    const Mat v = gauss_legendre_panels(
        [&](double t) -> Mat { return phi.eval(t).adjoint() * p.sys.Delta_at(t) * as_col(f(t)); },
        knots_between(phi.knots(), f.lo, f.hi, 16));
    out[i] = v.col(0);
  });
  return out;
}

std::vector<double> pairing_nodes(const DistributionFunction& sigma) {
  std::vector<double> nodes;
  for (int j = 0; j < sigma.cells(); ++j) nodes.push_back(0.5 * (sigma.grid[j] + sigma.grid[j + 1]));
  for (const Jump& jp : sigma.jumps) nodes.push_back(jp.location);
  return nodes;
}

namespace {

Mat node_measure(const DistributionFunction& sigma, std::size_t k) {
  const std::size_t cells = sigma.continuous.size();
  return k < cells ? sigma.continuous[k] : sigma.jumps[k - cells].weight;
}

}  // namespace

double transform_norm2(const DistributionFunction& sigma, const std::vector<Vec>& fhat) {
  double acc = 0.0;
  for (std::size_t k = 0; k < fhat.size(); ++k) acc += fhat[k].dot(node_measure(sigma, k) * fhat[k]).real();
  return acc;
}

double parseval_defect(const Problem& p, const DistributionFunction& sigma, const WeightedFunction& f,
                       int workers) {
  const double nf = delta_norm2(p.sys, f);
  if (nf == 0.0) return 0.0;
  const auto fhat = fourier(p, f, pairing_nodes(sigma), workers);
  return std::abs(transform_norm2(sigma, fhat) - nf) / nf;
}

InverseTransform::InverseTransform(const Problem& p, const DistributionFunction& sigma,
                                   const std::vector<Vec>& fhat_nodes, double x_max, int workers)
    : p_(&p), x_max_(x_max) {
  const auto nodes = pairing_nodes(sigma);
  if (nodes.size() != fhat_nodes.size()) fail(Errc::ShapeMismatch, "f̂ must be sampled at the pairing nodes");
  phis_.resize(nodes.size());
  coeffs_.resize(nodes.size());
  const Mat init = phi_initial(p.U);
  parallel_for(static_cast<int>(nodes.size()), workers, [&](int k) {
    phis_[k] = propagate_dense(p.sys, cd(nodes[k], 0.0), init, p.sys.a, x_max);
    coeffs_[k] = node_measure(sigma, k) * fhat_nodes[k];
  });
}

Vec InverseTransform::operator()(double t) const {
  Vec acc = Vec::Zero(p_->sys.n());
  for (std::size_t k = 0; k < phis_.size(); ++k) acc += phis_[k].eval(t) * coeffs_[k];
  return acc;
}

InverseTransform inverse_fourier(const Problem& p, const DistributionFunction& sigma,
                                 const std::vector<Vec>& fhat_nodes, double x_max, int workers) {
  return InverseTransform(p, sigma, fhat_nodes, x_max, workers);
}

double roundtrip_error(const Problem& p, const DistributionFunction& sigma, const WeightedFunction& f, double x_max,
                       int workers) {
  const double nf = delta_norm2(p.sys, f);
  if (nf == 0.0) return 0.0;
  const auto fhat = fourier(p, f, pairing_nodes(sigma), workers);
  const InverseTransform inv(p, sigma, fhat, x_max, workers);
  WeightedFunction diff;
  diff.lo = p.sys.a;
  diff.hi = x_max;
  diff.f = [&](double t) -> Vec {
    const Vec ft = (t >= f.lo && t <= f.hi) ? f(t) : Vec::Zero(p.sys.n());
    return ft - inv(t);
  };
  return std::sqrt(delta_norm2(p.sys, diff, 400) / nf);
}

SF0Report sf0_criteria(const Problem& p, const BoundaryParameter& tau, const std::vector<double>& ys, double tol) {
  const DecomposingTriplet& t = p.triplet;
  const int K = tau.K, c = t.c;
  std::vector<int> cidx = range(t.q, t.q + c), h2idx;
  for (int k = 0; k < K; ++k)
    if (k < t.q || k >= t.q + c) h2idx.push_back(k);
  SF0Report rep;
  rep.ys = ys;
  if (ys.empty()) fail(Errc::PreconditionFailed, "no sample heights");
  if (c == 0) {
    // Both block functions act on 𝒞_b = {0}.
    rep.B.assign(ys.size(), 0.0);
    rep.Bhat.assign(ys.size(), 0.0);
    rep.B_lower.assign(ys.size(), 0.0);
    rep.verdict = true;
    return rep;
  }
  std::vector<Mat> Bs, Bhs;
  for (double y : ys) {
    const cd lam(0.0, y);
    const WeylData wu = weyl_data(p, lam);
    const Mat C = tau.C(lam);
    const Mat C0 = C.leftCols(K), C1 = C.rightCols(c);
    const Mat C0b = select_cols(C0, cidx), C02 = select_cols(C0, h2idx);
    const Mat M4 = select_rows(wu.Mdot, cidx), Np = select_rows(wu.Mdot, h2idx);
    const Mat mid = C0b - C1 * M4 + I_unit * C02 * Np;
    if (condition_number(mid) > 1e12) fail(Errc::IllPosedParameter, "SF₀ block matrix is singular");
    const Mat inv = mid.inverse();
    const Mat B = inv * C1 / lam;
    const Mat Bh = M4 * inv * C0b / lam;
    const cd lam_l(0.0, -y);
    const WeylData wl = weyl_data(p, lam_l);
    const Mat D0 = tau.D0(lam_l), D1 = tau.D1(lam_l);
    const Mat Q = D0 - D1 * wl.Mdot;
    if (condition_number(Q) > 1e12) fail(Errc::IllPosedParameter, "D0 − D1 Ṁ₋ is singular");
    const Mat Bl = select_rows(Q.inverse() * D1, cidx) / lam_l;
    Bs.push_back(B);
    Bhs.push_back(Bh);
    rep.B.push_back(max_abs(B));
    rep.Bhat.push_back(max_abs(Bh));
    rep.B_lower.push_back(max_abs(Bl));
  }
  const std::size_t n = ys.size();
  rep.B_limit = rep.B.back();
  rep.Bhat_limit = rep.Bhat.back();
  if (n >= 3) {
    auto settling = [&](const std::vector<Mat>& v) {
      const double d1 = max_abs(v[n - 1] - v[n - 2]), d0 = max_abs(v[n - 2] - v[n - 3]);
      return d1 <= std::max(d0, tol);
    };
    if (!settling(Bs) || !settling(Bhs)) fail(Errc::NoConvergence, "SF₀ limits are not settling along iy");
  }
  rep.verdict = rep.B_limit < tol && rep.Bhat_limit < tol;
  return rep;
}

SpectrumReport spectrum_readout(const DistributionFunction& sigma, double dens_tol, int principal) {
  SpectrumReport rep;
  bool all = sigma.cells() > 0;
  for (int j = 0; j < sigma.cells(); ++j) {
    const double lo = sigma.grid[j], hi = sigma.grid[j + 1];
    const bool ac = trace_re(sigma.continuous[j]) / (hi - lo) > dens_tol;
    all = all && ac;
    if (!ac) continue;
    if (!rep.ac_intervals.empty() && rep.ac_intervals.back().second == lo)
      rep.ac_intervals.back().second = hi;
    else
      rep.ac_intervals.emplace_back(lo, hi);
  }
  rep.ac_covers_grid = all;
  const double floor = 1e-9 * std::max(1.0, sigma.total_mass);
  for (const Jump& jp : sigma.jumps) {
    const Mat w = principal < 0 ? jp.weight : Mat(jp.weight.topLeftCorner(principal, principal));
    if (trace_re(w) > floor) rep.points.push_back(jp.location);
  }
  return rep;
}

}  // namespace weylkit
