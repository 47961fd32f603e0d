#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"
#include "oracles.hpp"
#include "weylkit/catalog.hpp"
#include "weylkit/spectral.hpp"

using namespace weylkit;

namespace {

WeightedFunction bump(int dim, double lo, double hi) {
  return WeightedFunction{[=](double t) {
                            Vec v = Vec::Zero(dim);
                            if (t > lo && t < hi) {
                              const double s = std::sin(M_PI * (t - lo) / (hi - lo));
                              v(0) = s * s * s * s;
                            }
                            return v;
                          },
                          lo, hi};
}

}  // namespace

TEST_CASE("Stieltjes inversion of −1/λ and of a constant") {
  const auto grid = linspace(-1.0, 1.0, 9);
  const auto one = stieltjes_inversion([](cd l) { return Mat::Constant(1, 1, -1.0 / l); }, grid);
  REQUIRE(one.jumps.size() == 1);
  CHECK(std::abs(one.jumps[0].location) < 1e-6);
  CHECK(std::abs(one.jumps[0].weight(0, 0) - 1.0) < 1e-3);
  const auto none = stieltjes_inversion([](cd) { return Mat::Constant(1, 1, 2.0); }, grid);
  CHECK(none.jumps.empty());
  CHECK(none.total_mass < 1e-12);
}

TEST_CASE("Green kernel is Hermitian symmetric") {
  for (const char* name : {"dirichlet_unit", "free_half_line", "cubic_unit", "case1_synthetic"}) {
    CAPTURE(name);
    const Example ex = make_example(name);
    const cd lam(0.7, -1.3);
    const GreenKernel g(ex.problem, ex.tau, lam, 1.0);
    const GreenKernel gb(ex.problem, ex.tau, std::conj(lam), 1.0);
    for (auto [x, t] : {std::pair{0.2, 0.7}, {0.9, 0.1}, {0.5, 0.45}}) {
      const Mat a = g(x, t), b = gb(t, x);
      CHECK((a.adjoint() - b).norm() < 1e-9 * std::max(1.0, a.norm()));
    }
  }
}

TEST_CASE("green_apply solves the inhomogeneous system with the boundary condition at a") {
  const Example ex = free_half_line();
  const Problem& p = ex.problem;
  const cd lam(0.0, 2.0);
  const GreenKernel g(p, ex.tau, lam, 6.0);
  const WeightedFunction f{[](double t) {
                             Vec v = Vec::Zero(2);
                             if (t > 0.5 && t < 1.5) v(0) = 1.0;
                             return v;
                           },
                           0.5, 1.5};
  const auto ys = green_apply(g, f, {0.0, 0.25, 2.0, 4.0});
  CHECK(std::abs(ys[0](0)) < 1e-9);
  // y' = −J(B + λΔ)y − JΔf, integrated past the support from x = 0.25.
  const Mat J = p.sys.J;
  const Mat A = -J * (p.sys.B_at(0.0) + lam * p.sys.Delta_at(0.0));
  const auto ref = oracle::odeint_solve(
      [&](double t) {
        Mat aug = Mat::Zero(3, 3);
        aug.topLeftCorner(2, 2) = A;
        aug.topRightCorner(2, 1) = -J * p.sys.Delta_at(t) * f(t);
        return aug;
      },
      (Vec(3) << ys[1](0), ys[1](1), 1.0).finished(), 0.25, {2.0, 4.0});
  CHECK((ref[0].head(2) - ys[2]).norm() < 1e-6 * ys[2].norm());
  CHECK((ref[1].head(2) - ys[3]).norm() < 1e-6 * ys[3].norm());
}

TEST_CASE("first resolvent identity") {
  const Example ex = dirichlet_unit();
  const Problem& p = ex.problem;
  const cd lam(3.0, 1.0), mu(-2.0, -0.5);
  const GreenKernel gl(p, ex.tau, lam, 1.0), gm(p, ex.tau, mu, 1.0);
  const WeightedFunction f = bump(2, 0.1, 0.8);
  const WeightedFunction rmu{[&](double t) { return green_apply(gm, f, t); }, 0.0, 1.0};
  for (double x : {0.3, 0.6}) {
    const Vec lhs = green_apply(gl, f, x) - green_apply(gm, f, x);
    const Vec rhs = (lam - mu) * green_apply(gl, rmu, x);
    CHECK((lhs - rhs).norm() < 1e-6 * std::max(1e-3, lhs.norm()));
  }
}

TEST_CASE("Fourier transform at a Dirichlet eigenvalue") {
  const Example ex = dirichlet_unit();
  const Problem& p = ex.problem;
  const WeightedFunction f = bump(2, 0.0, 1.0);
  const Mat phi0 = phi_initial(p.U);
  for (int k = 1; k <= 3; ++k) {
    const double s = std::pow(k * M_PI, 2);
    // φ₁(t) = φ₁(0) cos(kπt) + φ₂(0) sin(kπt)/(kπ)
    auto gk = [&](auto fn) {
      return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(fn, 0.0, 1.0, 15, 1e-13);
    };
    const double ic = gk([&](double t) { return std::cos(k * M_PI * t) * f(t)(0).real(); });
    const double is = gk([&](double t) { return std::sin(k * M_PI * t) / (k * M_PI) * f(t)(0).real(); });
    const cd ref = std::conj(phi0(0, 0)) * ic + std::conj(phi0(1, 0)) * is;
    const auto fh = fourier(p, f, {s});
    CHECK(std::abs(fh[0](0) - ref) < 1e-6);
  }
  const WeightedFunction g = bump(2, 0.2, 0.6);
  const WeightedFunction sum{[&](double t) { return Vec(f(t) + g(t)); }, 0.0, 1.0};
  const auto a = fourier(p, f, {5.0, 50.0}), b = fourier(p, g, {5.0, 50.0}), ab = fourier(p, sum, {5.0, 50.0});
  for (int k = 0; k < 2; ++k) CHECK((ab[k] - a[k] - b[k]).norm() < 1e-12);
}

TEST_CASE("truncated parameter: the Ĥ block of Σ grows with slope 1/(2π)") {
  const Example ex = cubic_half_line();
  const auto grid = linspace(-5.0, 5.0, 11);
  const auto sig = stieltjes_inversion([&](cd l) { return m_tau(ex.problem, ex.tau, l).m; }, grid);
  for (int k = 0; k < sig.cells(); ++k) {
    const double width = grid[k + 1] - grid[k];
    CHECK(std::abs(sig.increments[k](1, 1).real() - width / (2 * M_PI)) < 1e-6);
  }
}

TEST_CASE("spectrum readouts") {
  DistributionFunction s;
  s.grid = {-1.0, 0.0, 1.0};
  s.increments = {Mat::Zero(1, 1), Mat::Zero(1, 1)};
  s.continuous = s.increments;
  s.jumps = {Jump{0.0, Mat::Constant(1, 1, 1.0)}};
  s.total_mass = 1.0;
  const SpectrumReport r = spectrum_readout(s);
  CHECK(r.ac_intervals.empty());
  REQUIRE(r.points.size() == 1);
  CHECK(r.points[0] == 0.0);
}

TEST_CASE("Parseval defect shrinks as the window widens") {
  const Example ex = dirichlet_unit();
  const WeightedFunction f = bump(2, 0.0, 1.0);
  StieltjesOptions o;
  o.jump_tol_rel = 1e-6;
  auto m = [&](cd l) { return m_tau(ex.problem, ex.tau, l).m; };
  double last = 1e300;
  for (double hi : {120.0, 400.0, 1000.0}) {
    const auto sig = stieltjes_inversion(m, linspace(-5.0, hi, static_cast<int>(hi / 2.5)), o);
    const double d = parseval_defect(ex.problem, sig, f);
    CHECK(d <= last);
    last = d;
  }
  CHECK(last < 0.01);
}
