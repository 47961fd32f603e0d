#include "weylkit/catalog.hpp"

#include "weylkit/error.hpp"

namespace weylkit {
namespace {

Mat random_hermitian(int n, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) = cd(g(rng), g(rng));
  return scale * herm_part(h);
}

Mat schrodinger_B() {
  Mat B = Mat::Zero(2, 2);
  B(1, 1) = 1.0;
  return B;
}

Mat schrodinger_Delta() {
  Mat D = Mat::Zero(2, 2);
  D(0, 0) = 1.0;
  return D;
}

Mat dirichlet_U() {
  Mat U(1, 2);
  U << 1.0, 0.0;
  return U;
}

Example from_reduction(std::string name, const Reduction& r, double lo, double hi) {
  const BlockSignature& sig = r.sys.sig;
  Example ex{std::move(name), Problem::make(r.sys, separated_U(sig, Mat::Zero(sig.nu_plus, sig.nu_plus))), {}, r,
             lo, hi};
  ex.tau = make_tau(ex.problem.triplet, TauKind::Tau0);
  return ex;
}

}  // namespace

std::vector<std::string> example_names() {
  return {"dirichlet_unit", "free_half_line", "cubic_half_line", "cubic_unit", "quintic_half_line",
          "case1_synthetic"};
}

Example make_example(const std::string& name) {
  if (name == "dirichlet_unit") return dirichlet_unit();
  if (name == "free_half_line") return free_half_line();
  if (name == "cubic_half_line") return cubic_half_line();
  if (name == "cubic_unit") return cubic_unit();
  if (name == "quintic_half_line") return quintic_half_line();
  if (name == "case1_synthetic") return case1_synthetic();
  fail(Errc::ConfigError, "unknown example '" + name + "'");
}

Example dirichlet_unit() {
  const auto sig = BlockSignature::make(1, 0);
  auto sys = SymmetricSystem::make(sig, 0.0, Regular{1.0}, MatrixSampler::constant(schrodinger_B()),
                                   MatrixSampler::constant(schrodinger_Delta()));
  Example ex{"dirichlet_unit", Problem::make(sys, dirichlet_U()), {}, std::nullopt, -5.0, 260.0};
  Mat K(1, 2);
  K << 1.0, 0.0;
  ex.tau = tau_from_endpoint_rows(ex.problem.triplet, K);
  return ex;
}

Example free_half_line(double t0) {
  const auto sig = BlockSignature::make(1, 0);
  auto sys = SymmetricSystem::make(sig, 0.0, ConstantTail{t0, schrodinger_B(), schrodinger_Delta()},
                                   MatrixSampler::constant(schrodinger_B()),
                                   MatrixSampler::constant(schrodinger_Delta()));
  Example ex{"free_half_line", Problem::make(sys, dirichlet_U()), {}, std::nullopt, 0.5, 50.0};
  ex.tau = make_tau(ex.problem.triplet, TauKind::Tau0);
  return ex;
}

Example cubic_half_line() {
  const auto e = OddOrderExpression::constant_scalar(1, {0.0, 0.0}, {1.0, 0.0});
  return from_reduction("cubic_half_line", reduce_to_system(e, 0.0, ConstantTail{0.0, {}, {}}), -60.0, 60.0);
}

Example cubic_unit() {
  const auto e = OddOrderExpression::constant_scalar(1, {0.0, 0.0}, {1.0, 0.0});
  const Reduction r = reduce_to_system(e, 0.0, Regular{1.0});
  Example ex = from_reduction("cubic_unit", r, -60.0, 60.0);
  return ex;
}

Example quintic_half_line() {
  const auto e = OddOrderExpression::constant_scalar(2, {0.0, 0.0, 1.0}, {1.0, 0.0, 0.0});
  return from_reduction("quintic_half_line", reduce_to_system(e, 0.0, ConstantTail{0.0, {}, {}}), -60.0, 60.0);
}

Example case1_synthetic() {
  const auto sig = BlockSignature::make(1, 2);
  Mat B(4, 4);
  B << 0.5, 0.1, 0.0, 0.2,
       0.1, -0.3, cd(0.0, 0.2), 0.0,
       0.0, cd(0.0, -0.2), 0.4, 0.1,
       0.2, 0.0, 0.1, 1.0;
  Mat Omega = Mat::Zero(4, 4);
  Omega(1, 1) = 1.0;
  auto sys = SymmetricSystem::make(sig, 0.0, AbstractForm{1.0, Omega}, MatrixSampler::constant(B),
                                   MatrixSampler::constant(Mat::Identity(4, 4)));
  Example ex{"case1_synthetic", Problem::make(sys, separated_U(sig, Mat::Constant(1, 1, 0.3))), {}, std::nullopt,
             -10.0, 10.0};
  ex.tau = make_tau(ex.problem.triplet, TauKind::Tau0);
  return ex;
}

Mat random_J_unitary(const BlockSignature& sig, std::mt19937_64& rng, double scale) {
  const int n = sig.n();
  const Mat J = build_J(sig);
  const Mat X = J * random_hermitian(n, rng, scale);
  const Mat Id = Mat::Identity(n, n);
  return (Id - X).partialPivLu().solve(Id + X);
}

Mat random_U(const BlockSignature& sig, std::mt19937_64& rng) {
  const Mat U0 = separated_U(sig, random_hermitian(sig.nu_plus, rng, 1.0));
  return U0 * random_J_unitary(sig, rng);
}

SymmetricSystem random_system(const BlockSignature& sig, const std::string& kind, std::mt19937_64& rng) {
  const int n = sig.n();
  const Mat B0 = random_hermitian(n, rng, 0.5), B1 = random_hermitian(n, rng, 0.5);
  std::vector<ScalarSampler> entries;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) entries.push_back(ScalarSampler::polynomial({B0(i, j), B1(i, j)}));
  MatrixSampler B(n, n, entries);
  MatrixSampler D = MatrixSampler::constant(Mat::Identity(n, n));
  Endpoint end;
  if (kind == "regular") {
    end = Regular{1.0};
  } else if (kind == "tail") {
    end = ConstantTail{1.0, B(1.0), Mat::Identity(n, n)};
  } else if (kind == "form") {
    end = AbstractForm{1.0, Mat::Zero(n, n)};
  } else {
    fail(Errc::ConfigError, "unknown endpoint kind '" + kind + "'");
  }
  return SymmetricSystem::make(sig, 0.0, end, B, D);
}

}  // namespace weylkit
