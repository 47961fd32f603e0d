// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "weylkit/catalog.hpp"
#include "weylkit/error.hpp"
#include "weylkit/spectral.hpp"

using namespace weylkit;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

const std::vector<cd> kUpper = {cd(0.4, 0.9), cd(-3.0, 1.2), cd(2.0, 0.3), cd(-0.5, 2.5), cd(7.0, 1.0), cd(0.1, 0.2)};

WeightedFunction smooth_bump(int dim, double lo, double hi) {
  return WeightedFunction{[=](double t) {
                            Vec v = Vec::Zero(dim);
                            if (t > lo && t < hi) v(0) = std::exp(-(hi - lo) / ((t - lo) * (hi - t)));
                            return v;
                          },
                          lo, hi};
}

// Relations, J-unitarity, Γ identity at a, endpoint identity and Green identity.
double algebra_residual(const Problem& p, std::mt19937_64& rng) {
  const BoundaryOperatorU& u = p.U;
  const int n = p.sys.n();
  const Mat J = build_J(p.sys.sig);
  double r = relation_residuals(p.sys.sig, u.U).max();
  r = std::max(r, (u.Ut.adjoint() * J * u.Ut - J).norm());
  r = std::max(r, (u.Ut * (-J * u.Ut.adjoint() * J) - Mat::Identity(n, n)).norm());
  std::normal_distribution<double> g;
  for (int k = 0; k < 3; ++k) {
    Vec y(n), z(n);
    for (int i = 0; i < n; ++i) {
      y(i) = cd(g(rng), g(rng));
      z(i) = cd(g(rng), g(rng));
    }
    r = std::max(r, std::abs(gamma_a_identity(u, y, z)));
  }
  r = std::max(r, endpoint_identity_residual(p.form));
  r = std::max(r, green_identity_residual(p.triplet, 10, rng));
  return r;
}

struct BlockStats {
  double blocks = 0.0, symmetry = 0.0, base = 0.0;
};

BlockStats weyl_block_stats(const Problem& p) {
  BlockStats s;
  for (cd lam : kUpper) {
    const WeylData up = weyl_data(p, lam);
    const WeylData lo = weyl_data(p, std::conj(lam));
    s.blocks = std::max({s.blocks, up.block_residual, lo.block_residual});
    s.symmetry = std::max(s.symmetry, symmetry_residual(lo, up));
    s.base = std::max({s.base, base_condition_residual(p, up), base_condition_residual(p, lo)});
  }
  return s;
}

struct MLawStats {
  double agreement = 0.0, adjoint = 0.0, lower_bound = 1e300, condition = 0.0;
};

void m_law_stats(const Problem& p, const BoundaryParameter& tau, MLawStats& s) {
  for (cd up : kUpper) {
    const cd lam = std::conj(up);
    const WeylData w = weyl_data(p, lam);
    const MTau lo = m_tau(p, tau, w);
    const MTau hi = m_tau(p, tau, up);
    s.agreement = std::max({s.agreement, lo.agreement, hi.agreement});
    s.condition = std::max({s.condition, lo.condition_residual, hi.condition_residual});
    s.adjoint = std::max(s.adjoint, max_abs(hi.m.adjoint() - lo.m) / std::max(1.0, max_abs(lo.m)));
    s.lower_bound = std::min(s.lower_bound, lower_bound_margin(p, w, lo));
  }
}

double truncated_triangularity(const Problem& p) {
  const auto& t = p.triplet;
  const int K = t.tau_dim(), q = t.q, c = t.c;
  const BoundaryParameter tau = make_tau(t, TauKind::Truncated, constant_lambda_sampler(Mat::Identity(K - q, K - q)),
                                         constant_lambda_sampler(Mat::Zero(K - q, c)));
  double r = 0.0;
  for (cd up : kUpper) {
    const auto tri = triangularity(p, m_tau(p, tau, std::conj(up)).m);
    r = std::max({r, tri.first, tri.second});
  }
  return r;
}

BoundaryParameter lambda_dependent_tau(const DecomposingTriplet& t) {
  const int K = t.tau_dim();
  Mat c0 = Mat::Identity(K, K), c1 = 0.5 * Mat::Identity(K, K);
  return make_tau(t, TauKind::General, polynomial_lambda_sampler({c0, c1}),
                  constant_lambda_sampler(Mat::Zero(K, t.c)));
}

// ---------------------------------------------------------------------------

void criterion1(Outcome& o) {
  const std::vector<std::pair<int, int>> sigs = {{1, 0}, {1, 1}, {2, 1}};
  const std::vector<std::string> kinds = {"regular", "tail", "form"};
  std::mt19937_64 rng(1729);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto sig = BlockSignature::make(sigs[i % 3].first, sigs[i % 3].second);
    const auto sys = random_system(sig, kinds[(i / 3) % 3], rng);
    const Problem p = Problem::make(sys, random_U(sig, rng));
    worst = std::max(worst, algebra_residual(p, rng));
    o.require(triplet_surjective(p.triplet), "surjectivity");
  }
  o.detail << "50 instances, max residual " << worst;
  o.require(worst <= 1e-10, "residual > 1e-10");
}

void criterion2(Outcome& o) {
  BlockStats all;
  for (const auto& name : example_names()) {
    const BlockStats s = weyl_block_stats(make_example(name).problem);
    all.blocks = std::max(all.blocks, s.blocks);
    all.symmetry = std::max(all.symmetry, s.symmetry);
  }
  o.detail << example_names().size() << " examples x " << 2 * kUpper.size() << " lambda, blocks " << all.blocks
           << ", symmetry " << all.symmetry;
  o.require(all.blocks <= 1e-7, "blocks > 1e-7");
  o.require(all.symmetry <= 1e-8, "symmetry > 1e-8");
}

void criterion3(Outcome& o) {
  MLawStats s;
  double tri = 0.0;
  for (const auto& name : example_names()) {
    const Example ex = make_example(name);
    m_law_stats(ex.problem, ex.tau, s);
    m_law_stats(ex.problem, lambda_dependent_tau(ex.problem.triplet), s);
    if (ex.problem.triplet.q > 0) tri = std::max(tri, truncated_triangularity(ex.problem));
  }
  o.detail << "agreement " << s.agreement << ", adjoint " << s.adjoint << ", min lower bound " << s.lower_bound
           << ", triangularity " << tri;
  o.require(s.agreement <= 1e-8, "agreement > 1e-8");
  o.require(s.adjoint <= 1e-8, "m(conj lambda)* != m(lambda)");
  o.require(s.lower_bound >= -1e-7, "lower bound < -1e-7");
  o.require(tri <= 1e-10, "triangularity > 1e-10");
}

void criterion4(Outcome& o) {
  const std::vector<double> s = {-2.3, 0.7, 3.1};
  std::vector<Mat> w(3, Mat(2, 2));
  w[0] << 1.0, 0.3, 0.3, 0.5;
  w[1] << 0.2, cd(0.0, 0.1), cd(0.0, -0.1), 0.7;
  Vec v(2);
  v << cd(0.6, 0.2), cd(-0.4, 0.5);
  w[2] = v * v.adjoint();
  auto m = [&](cd l) {
    Mat out = Mat::Zero(2, 2);
    for (int k = 0; k < 3; ++k) out += w[k] / (s[k] - l);
    return out;
  };
  const auto sigma = stieltjes_inversion(m, linspace(-5.0, 5.0, 41));
  o.require(sigma.jumps.size() == 3, "jump count");
  double loc = 0.0, wt = 0.0;
  for (std::size_t k = 0; k < std::min<std::size_t>(3, sigma.jumps.size()); ++k) {
    loc = std::max(loc, std::abs(sigma.jumps[k].location - s[k]));
    wt = std::max(wt, (sigma.jumps[k].weight - w[k]).norm() / w[k].norm());
  }
  o.detail << sigma.jumps.size() << " jumps, location error " << loc << ", weight error " << wt;
  o.require(loc <= 1e-3, "location");
  o.require(wt <= 1e-3, "weight");
}

void criterion5(Outcome& o) {
  const Example ex = dirichlet_unit();
  const Problem& p = ex.problem;
  StieltjesOptions opts;
  opts.jump_tol_rel = 1e-6;
  const auto sigma = stieltjes_inversion([&](cd l) { return m_tau(p, ex.tau, l).m; }, linspace(-5.0, 3000.0, 601),
                                         opts);
  // Eigenfunction oracle: φ₁(t, (kπ)²) = φ₁(0) cos kπt + φ₂(0) sin kπt / kπ, weight 1/‖φ₁‖².
  const Mat phi0 = phi_initial(p.U);
  double loc = 0.0, wt = 0.0;
  int found = 0;
  for (int k = 1; k <= 5; ++k) {
    const double sk = std::pow(k * M_PI, 2);
    const Jump* hit = nullptr;
    for (const auto& j : sigma.jumps)
      if (std::abs(j.location - sk) < 0.01 * sk) hit = &j;
    if (!hit) continue;
    ++found;
    const double norm2 = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        [&](double t) {
          const cd y = phi0(0, 0) * std::cos(k * M_PI * t) + phi0(1, 0) * std::sin(k * M_PI * t) / (k * M_PI);
          return std::norm(y);
        },
        0.0, 1.0, 15, 1e-14);
    loc = std::max(loc, std::abs(hit->location - sk) / sk);
    wt = std::max(wt, std::abs(hit->weight(0, 0) - 1.0 / norm2) * norm2);
  }
  const WeightedFunction f = smooth_bump(2, 0.0, 1.0);
  const double pd = parseval_defect(p, sigma, f);
  const double rt = roundtrip_error(p, sigma, f, 1.0);
  o.detail << found << "/5 eigenvalues, location " << loc << ", weight " << wt << ", Parseval " << pd
           << ", round-trip " << rt;
  o.require(found == 5, "missing eigenvalue");
  o.require(loc <= 1e-6, "location");
  o.require(wt <= 1e-3, "weight");
  o.require(pd <= 0.01, "Parseval");
  o.require(rt <= 0.02, "round-trip");
}

void criterion6(Outcome& o) {
  const Example ex = free_half_line();
  const Problem& p = ex.problem;
  const std::vector<cd> lams = {cd(0.5, 0.1), cd(2.0, -0.1), cd(-1.0, 0.5), cd(4.0, -0.5),
                                cd(1.0, 1.0), cd(-3.0, -1.0), cd(9.0, 2.0), cd(0.2, -2.0)};
  double shoot = 0.0;
  for (cd lam : lams) {
    const cd ref = oracle::truncated_shooting_m(lam, 800.0);
    shoot = std::max(shoot, std::abs(minimal_m(p, lam)(0, 0) - ref) / std::max(1.0, std::abs(ref)));
  }
  const auto grid = linspace(0.5, 50.0, 100);
  const auto sigma = stieltjes_inversion([&](cd l) { return m_tau(p, ex.tau, l).m; }, grid);
  double dens = 0.0;
  for (int k = 0; k < sigma.cells(); ++k) {
    const double exact = 2.0 / (3.0 * M_PI) * (std::pow(grid[k + 1], 1.5) - std::pow(grid[k], 1.5));
    dens = std::max(dens, std::abs(sigma.increments[k](0, 0).real() - exact) / exact);
  }
  o.detail << "shooting " << shoot << " at 8 lambda, " << sigma.jumps.size() << " jumps, density " << dens;
  o.require(shoot <= 1e-4, "shooting");
  o.require(sigma.jumps.empty(), "jumps on [0.5, 50]");
  o.require(dens <= 0.01, "density");
}

void criterion7(Outcome& o) {
  const Example ex = cubic_half_line();
  const Problem& p = ex.problem;
  const Reduction& r = *ex.reduction;
  const OddDeficiency d = odd_deficiency(r);
  const DeficiencyIndices di = deficiency_indices(p.sys, p.mode_tol);
  o.require(d.d_plus == 1 && d.d_minus == 2 && di.n_plus == 1 && di.n_minus == 2, "deficiency");

  double tri = truncated_triangularity(p);
  for (cd up : kUpper) {
    const auto t = triangularity(p, m_tau(p, ex.tau, std::conj(up)).m);
    tri = std::max({tri, t.first, t.second});
  }
  o.require(tri <= 1e-10, "triangularity");

  const auto sigma = stieltjes_inversion([&](cd l) { return m_tau(p, ex.tau, l).m; }, linspace(-60.0, 60.0, 961));
  const SpectrumReport rep = spectrum_readout(sigma);
  o.require(rep.ac_covers_grid, "ac support");
  const double pd = parseval_defect(p, sigma, smooth_bump(p.sys.n(), 0.0, 3.0));
  o.require(pd <= 0.02, "Parseval");

  // Reduced system against direct integration of l[y] = λy (odeint).
  const std::vector<cd> coeffs = symbol_coefficients(r.expr);
  const std::vector<double> ts = {0.5, 1.0, 2.0};
  double fid = 0.0;
  for (cd lam : {cd(1.0, 0.5), cd(-2.0, -1.0)}) {
    std::vector<Vec> jets;
    for (int j = 0; j < 3; ++j) {
      Vec jet0 = Vec::Zero(3);
      jet0(j) = 1.0;
      jets.push_back(jet0);
      const auto ref = oracle::scalar_jets(coeffs, lam, jet0, 0.0, ts);
      const auto mine = propagate_to(p.sys, lam, Mat(r.jet_to_bold * jet0), 0.0, ts);
      for (std::size_t k = 0; k < ts.size(); ++k) {
        const Vec expect = r.jet_to_bold * ref[k];
        fid = std::max(fid, (mine[k] - expect).norm() / std::max(1.0, expect.norm()));
      }
    }
    fid = std::max(fid, reduction_fidelity(r, lam, 2.0, jets));
  }
  o.require(fid <= 1e-8, "reduction fidelity");
  o.detail << "deficiency (" << d.d_plus << "," << d.d_minus << "), triangularity " << tri << ", ac covers grid "
           << (rep.ac_covers_grid ? "yes" : "no") << ", Parseval " << pd << ", fidelity " << fid;
}

void criterion8(Outcome& o) {
  const Example ex = case1_synthetic();
  const Problem& p = ex.problem;
  o.require(p.triplet.tag == CaseTag::Case1, "case tag");
  o.require(p.form.nu_b_plus == 1 && p.form.nu_b_minus == 0, "endpoint inertia");
  std::mt19937_64 rng(77);
  const double alg = algebra_residual(p, rng);
  const BlockStats b = weyl_block_stats(p);
  MLawStats s;
  m_law_stats(p, ex.tau, s);
  m_law_stats(p, lambda_dependent_tau(p.triplet), s);
  const double tri = truncated_triangularity(p);
  o.detail << "algebra " << alg << ", blocks " << b.blocks << ", symmetry " << b.symmetry << ", boundary conditions "
           << std::max(b.base, s.condition) << ", agreement " << s.agreement << ", lower bound " << s.lower_bound;
  o.require(alg <= 1e-10, "algebra");
  o.require(b.blocks <= 1e-7 && b.symmetry <= 1e-8, "Weyl blocks");
  o.require(b.base <= 1e-8 && s.condition <= 1e-8, "boundary conditions");
  o.require(s.agreement <= 1e-8 && s.adjoint <= 1e-8 && s.lower_bound >= -1e-7, "m laws");
  o.require(tri <= 1e-10, "triangularity");
}

void criterion9(Outcome& o) {
  for (const char* name : {"cubic_half_line", "quintic_half_line"}) {
    const Example ex = make_example(name);
    const SF0Report r = sf0_criteria(ex.problem, ex.tau, {1e1, 1e2, 1e3, 1e4}, 1e-6);
    o.detail << name << ": dim C_b " << ex.problem.triplet.c << ", B " << r.B_limit << ", Bhat " << r.Bhat_limit
             << ", verdict " << (r.verdict ? "true" : "false") << "; ";
    o.require(r.verdict && r.B_limit < 1e-6 && r.Bhat_limit < 1e-6, name);
  }
}

}  // namespace

int main() {
  const std::vector<std::function<void(Outcome&)>> criteria = {criterion1, criterion2, criterion3,
                                                               criterion4, criterion5, criterion6,
                                                               criterion7, criterion8, criterion9};
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[k](o);
    } catch (const Error& e) {
      o.pass = false;
      o.detail << " [error " << e.id() << ": " << e.what() << "]";
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("%s criterion %zu (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", k + 1, secs, o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
