#include "doctest.h"
#include "oracles.hpp"
#include "weylkit/catalog.hpp"
#include "weylkit/error.hpp"

using namespace weylkit;

namespace {

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

cd robin_m(cd lam, double beta) {
  // y(1) = sin β, y'(1) = −cos β
  const cd k = std::sqrt(lam);
  const cd y0 = std::sin(beta) * std::cos(k) + std::cos(beta) * std::sin(k) / k;
  const cd dy0 = k * std::sin(beta) * std::sin(k) - std::cos(beta) * std::cos(k);
  return dy0 / y0;
}

}  // namespace

TEST_CASE("Dirichlet m-function is −√λ cot √λ") {
  const Example ex = dirichlet_unit();
  for (cd lam : {cd(0.3, 0.7), cd(0.3, -0.7), cd(-5.0, 2.0), cd(30.0, -1.0), cd(100.0, 0.2)}) {
    const cd k = std::sqrt(lam);
    const cd exact = -k * std::cos(k) / std::sin(k);
    const MTau mt = m_tau(ex.problem, ex.tau, lam);
    CHECK(std::abs(mt.m(0, 0) - exact) < 1e-8 * std::max(1.0, std::abs(exact)));
    CHECK(mt.agreement < 1e-10);
  }
}

TEST_CASE("Robin conditions at b through a constant boundary parameter") {
  const Example ex = dirichlet_unit();
  for (double beta : {0.3, 1.1, 2.5}) {
    Mat K(1, 2);
    K << std::cos(beta), std::sin(beta);
    const BoundaryParameter tau = tau_from_endpoint_rows(ex.problem.triplet, K);
    for (cd lam : {cd(2.0, 1.0), cd(2.0, -1.0), cd(-7.0, 0.5)}) {
      const cd exact = robin_m(lam, beta);
      CHECK(std::abs(m_tau(ex.problem, tau, lam).m(0, 0) - exact) < 1e-8 * std::max(1.0, std::abs(exact)));
    }
  }
}

TEST_CASE("free half-line m agrees with truncated-interval shooting") {
  const Example ex = free_half_line();
  for (cd lam : {cd(1.0, 0.5), cd(-2.0, -1.0), cd(4.0, 2.0)}) {
    const cd ref = oracle::truncated_shooting_m(lam, 60.0);
    CHECK(std::abs(minimal_m(ex.problem, lam)(0, 0) - ref) < 1e-7);
  }
  CHECK(displacement_residual(ex.problem, cd(0.5, -1.0), cd(-1.0, -2.0)) < 1e-8);
}

TEST_CASE("Weyl blocks and symmetry on the shipped examples") {
  for (const auto& name : example_names()) {
    CAPTURE(name);
    const Example ex = make_example(name);
    for (cd lam : {cd(0.4, 0.9), cd(-3.0, 1.2)}) {
      const WeylData lo = weyl_data(ex.problem, std::conj(lam));
      const WeylData up = weyl_data(ex.problem, lam);
      CHECK(lo.block_residual < 1e-7);
      CHECK(up.block_residual < 1e-7);
      CHECK(symmetry_residual(lo, up) < 1e-8);
      CHECK(base_condition_residual(ex.problem, lo) < 1e-8);
      CHECK(base_condition_residual(ex.problem, up) < 1e-8);
    }
  }
}

TEST_CASE("λ-dependent boundary parameter: both m routes agree") {
  const Example ex = case1_synthetic();
  const auto& t = ex.problem.triplet;
  REQUIRE(t.tau_dim() == 1);
  Mat c0 = Mat::Constant(1, 1, 1.0), c1 = Mat::Constant(1, 1, 0.5);
  const BoundaryParameter tau = make_tau(t, TauKind::General, polynomial_lambda_sampler({c0, c1}),
                                         constant_lambda_sampler(Mat::Zero(1, t.c)));
  for (cd lam : {cd(0.4, -0.9), cd(-1.0, -2.0), cd(0.4, 0.9)}) {
    const MTau mt = m_tau(ex.problem, tau, lam);
    CHECK(mt.agreement < 1e-8);
    CHECK(mt.condition_residual < 1e-8);
  }
  CHECK(holomorphy_defect(tau.D0_user, cd(0.3, -1.0)) < 1e-8);
}

TEST_CASE("truncated parameter gives a triangular m-function") {
  for (const char* name : {"cubic_half_line", "quintic_half_line", "case1_synthetic"}) {
    CAPTURE(name);
    const Example ex = make_example(name);
    const auto& t = ex.problem.triplet;
    const int K = t.tau_dim(), q = t.q, c = t.c;
    const Mat D0bar = Mat::Identity(K - q, K - q), D1bar = Mat::Zero(K - q, c);
    const BoundaryParameter tau = make_tau(t, TauKind::Truncated, constant_lambda_sampler(D0bar),
                                           constant_lambda_sampler(D1bar));
    for (cd lam : {cd(0.5, -1.0), cd(-4.0, -0.3)}) {
      const auto tri = triangularity(ex.problem, m_tau(ex.problem, tau, lam).m);
      CHECK(tri.first < 1e-10);
      CHECK(tri.second < 1e-10);
    }
  }
}

TEST_CASE("m-function lower bound and adjoint symmetry") {
  for (const auto& name : example_names()) {
    CAPTURE(name);
    const Example ex = make_example(name);
    for (cd lam : {cd(1.5, -0.8), cd(-0.5, -2.0)}) {
      const WeylData w = weyl_data(ex.problem, lam);
      const MTau mt = m_tau(ex.problem, ex.tau, w);
      CHECK(lower_bound_margin(ex.problem, w, mt) > -1e-7);
      const Mat up = m_tau(ex.problem, ex.tau, std::conj(lam)).m;
      CHECK(max_abs(up.adjoint() - mt.m) < 1e-8 * std::max(1.0, max_abs(mt.m)));
    }
  }
}

TEST_CASE("ill-posed parameters are reported") {
  const Example ex = dirichlet_unit();
  const auto& t = ex.problem.triplet;
  const BoundaryParameter tau = make_tau(t, TauKind::General, constant_lambda_sampler(Mat::Zero(1, 1)),
                                         constant_lambda_sampler(Mat::Zero(1, 1)));
  CHECK_THROWS_AS(m_tau(ex.problem, tau, cd(0.0, -1.0)), Error);
}
