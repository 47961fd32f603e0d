#include "doctest.h"
#include "weylkit/blockspace.hpp"
#include "weylkit/error.hpp"

using namespace weylkit;

TEST_CASE("J is skew-adjoint and unitary") {
  for (auto [p, h] : {std::pair{1, 0}, {1, 1}, {2, 1}, {1, 2}}) {
    const auto sig = BlockSignature::make(p, h);
    const Mat J = build_J(sig);
    const Mat I = Mat::Identity(sig.n(), sig.n());
    CHECK((J.adjoint() + J).norm() == 0.0);
    CHECK((J.adjoint() * J - I).norm() == 0.0);
    CHECK(sig.nu_minus() == p + h);
  }
}

TEST_CASE("inertia counts signs and rejects non-Hermitian input") {
  Mat h = Mat::Zero(3, 3);
  h(0, 0) = 2.0;
  h(1, 1) = -1.0;
  const Inertia in = inertia(h);
  CHECK(in.pos == 1);
  CHECK(in.neg == 1);
  CHECK(in.zero == 1);
  h(0, 1) = 1.0;
  CHECK_THROWS_AS(inertia(h), Error);
}

TEST_CASE("nevanlinna defect of -1/lambda vanishes, of +1/lambda does not") {
  std::vector<std::pair<cd, Mat>> good, bad;
  for (cd l : {cd(0.3, 1.0), cd(0.3, -1.0), cd(-2.0, 0.1)}) {
    good.push_back({l, Mat::Constant(1, 1, -1.0 / l)});
    bad.push_back({l, Mat::Constant(1, 1, 1.0 / l)});
  }
  CHECK(nevanlinna_defect(good) < 1e-14);
  CHECK(nevanlinna_defect(bad) > 0.1);
}

TEST_CASE("null spaces") {
  Mat a(1, 3);
  a << 1.0, 2.0, 0.0;
  const Mat n = null_space(a);
  CHECK(n.cols() == 2);
  CHECK((a * n).norm() < 1e-14);
  const Mat l = left_null_space(a.transpose());
  CHECK((l * a.transpose()).norm() < 1e-14);
}
