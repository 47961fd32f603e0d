#include "doctest.h"
#include "weylkit/boundary.hpp"
#include "weylkit/catalog.hpp"
#include "weylkit/error.hpp"

using namespace weylkit;

namespace {
const std::vector<std::pair<int, int>> kSigs = {{1, 0}, {1, 1}, {2, 1}, {1, 2}};
}

TEST_CASE("random boundary operators satisfy the relations and extend J-unitarily") {
  std::mt19937_64 rng(3);
  for (auto [p, h] : kSigs) {
    const auto sig = BlockSignature::make(p, h);
    const Mat J = build_J(sig);
    for (int trial = 0; trial < 5; ++trial) {
      const BoundaryOperatorU u = make_U(sig, random_U(sig, rng));
      CHECK(u.residuals.max() < 1e-10);
      CHECK((u.Ut.adjoint() * J * u.Ut - J).norm() < 1e-10);
      const Mat inv = -J * u.Ut.adjoint() * J;
      CHECK((u.Ut * inv - Mat::Identity(sig.n(), sig.n())).norm() < 1e-10);
    }
  }
}

TEST_CASE("relations reject a non-Lagrangian U") {
  const auto sig = BlockSignature::make(1, 0);
  Mat U(1, 2);
  U << 1.0, cd(0.0, 1.0);
  CHECK_THROWS_AS(validate_U(sig, U), Error);
}

TEST_CASE("Γ-maps at a reproduce the Lagrange form") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (auto [p, h] : kSigs) {
    const auto sig = BlockSignature::make(p, h);
    const BoundaryOperatorU u = make_U(sig, random_U(sig, rng));
    for (int trial = 0; trial < 4; ++trial) {
      Vec y(sig.n()), z(sig.n());
      for (int k = 0; k < sig.n(); ++k) {
        y(k) = cd(g(rng), g(rng));
        z(k) = cd(g(rng), g(rng));
      }
      CHECK(std::abs(gamma_a_identity(u, y, z)) < 1e-10);
    }
  }
}

TEST_CASE("initial data of φ and ψ") {
  const auto sig = BlockSignature::make(1, 1);
  std::mt19937_64 rng(9);
  const BoundaryOperatorU u = make_U(sig, random_U(sig, rng));
  const Mat phi = phi_initial(u);
  CHECK(phi.rows() == 3);
  CHECK(phi.cols() == 2);
  Mat top = Mat::Zero(3, 2);
  top.topRows(2) = Mat::Identity(2, 2);
  CHECK((u.Ut * phi - top).norm() < 1e-10);
  // Separated U with B = 0.
  const BoundaryOperatorU s0 = make_U(sig, separated_U(sig, Mat::Zero(1, 1)));
  Mat expect(3, 2);
  expect << 0.0, 0.0, 0.0, 1.0, -1.0, 0.0;
  CHECK((phi_initial(s0) - expect).norm() < 1e-12);
}

TEST_CASE("endpoint forms and case classification") {
  SUBCASE("regular endpoint") {
    const auto sys = dirichlet_unit().problem.sys;
    const EndpointForm f = build_endpoint_form(sys);
    CHECK(f.nu_b_plus == 1);
    CHECK(f.nu_b_minus == 1);
    CHECK(endpoint_identity_residual(f) < 1e-12);
    CHECK(classify_case(sys.sig, f) == CaseTag::EqualIndices);
  }
  SUBCASE("declared form with inertia (1, 0)") {
    const auto ex = case1_synthetic();
    CHECK(ex.problem.form.nu_b_plus == 1);
    CHECK(ex.problem.form.nu_b_minus == 0);
    CHECK(ex.problem.triplet.tag == CaseTag::Case1);
  }
  SUBCASE("limit point tail") {
    const auto ex = cubic_half_line();
    CHECK(ex.problem.form.data_dim == 0);
    CHECK(ex.problem.triplet.tag == CaseTag::Case2);
  }
}

TEST_CASE("abstract Green identity on all endpoint kinds") {
  std::mt19937_64 rng(21);
  for (auto [p, h] : kSigs) {
    const auto sig = BlockSignature::make(p, h);
    for (const char* kind : {"regular", "tail", "form"}) {
      const auto sys = random_system(sig, kind, rng);
      const Problem prob = Problem::make(sys, random_U(sig, rng));
      CHECK(green_identity_residual(prob.triplet, 10, rng) < 1e-10);
      CHECK(triplet_surjective(prob.triplet));
    }
  }
}
