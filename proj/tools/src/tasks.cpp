#include "tasks.hpp"

#include <filesystem>
#include <fstream>
#include <random>

#include "emit.hpp"
#include "weylkit/error.hpp"
#include "weylkit/parallel.hpp"

namespace weylkit::cli {
namespace {

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

std::ofstream open_out(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream os(std::filesystem::path(dir) / name);
  if (!os) fail(Errc::ConfigError, "cannot write to '" + dir + "'");
  return os;
}

json problem_summary(const JobConfig& c) {
  const auto& t = c.job.problem.triplet;
  json out{{"source", c.source},
           {"endpoint", endpoint_kind(c.job.problem.sys.endpoint)},
           {"case", case_name(t.tag)},
           {"nu_plus", t.sig.nu_plus},
           {"nu_hat", t.sig.nu_hat},
           {"nu_b_plus", t.form.nu_b_plus},
           {"nu_b_minus", t.form.nu_b_minus},
           {"dim_H0", t.dim_H0},
           {"dim_H1", t.dim_H1}};
  if (!c.example.empty()) out["example"] = c.example;
  return out;
}

DistributionFunction compute_sigma(const JobConfig& c) {
  const Problem& p = c.job.problem;
  const BoundaryParameter& tau = c.job.tau;
  StieltjesOptions o = c.stieltjes;
  o.workers = c.workers;
  return stieltjes_inversion([&p, &tau](cd l) { return m_tau(p, tau, l).m; }, c.grid.points(), o);
}

json sigma_json(const DistributionFunction& s) {
  json jumps = json::array();
  for (const auto& j : s.jumps) jumps.push_back(json{{"location", j.location}, {"weight", to_json(j.weight)}});
  const SpectrumReport rep = spectrum_readout(s);
  json ac = json::array();
  for (const auto& [lo, hi] : rep.ac_intervals) ac.push_back(json::array({lo, hi}));
  return json{{"cells", s.cells()},
              {"total_mass", s.total_mass},
              {"jumps", jumps},
              {"ac_intervals", ac},
              {"ac_covers_grid", rep.ac_covers_grid}};
}

json task_indices(const JobConfig& c) {
  json out = problem_summary(c);
  const DeficiencyIndices d = deficiency_indices(c.job.problem.sys, c.job.problem.mode_tol);
  out["n_plus"] = d.n_plus;
  out["n_minus"] = d.n_minus;
  if (c.job.reduction) {
    const OddDeficiency od = odd_deficiency(*c.job.reduction);
    out["n_plus"] = od.d_plus;
    out["n_minus"] = od.d_minus;
  }
  return out;
}

json task_mfun(const JobConfig& c, const std::string& dir) {
  const Problem& p = c.job.problem;
  const int count = static_cast<int>(c.lambdas.size());
  std::vector<MTau> res(count);
  parallel_for(count, c.workers, [&](int k) { res[k] = m_tau(p, c.job.tau, c.lambdas[k]); });
  auto os = open_out(dir, "mfun.csv");
  CsvWriter w(os);
  w.header({"lambda_re", "lambda_im"}, static_cast<int>(res[0].m.rows()), static_cast<int>(res[0].m.cols()));
  double nev = 0.0, agree = 0.0;
  for (int k = 0; k < count; ++k) {
    w.row({c.lambdas[k].real(), c.lambdas[k].imag()}, res[k].m);
    nev = std::max(nev, nevanlinna_defect({{c.lambdas[k], res[k].m}}));
    agree = std::max(agree, res[k].agreement);
  }
  json out = problem_summary(c);
  out["samples"] = count;
  out["max_nevanlinna_defect"] = nev;
  out["max_route_disagreement"] = agree;
  out["csv"] = "mfun.csv";
  return out;
}

json task_sigma(const JobConfig& c, const std::string& dir) {
  const DistributionFunction s = compute_sigma(c);
  auto os = open_out(dir, "sigma.csv");
  CsvWriter w(os);
  const int d = static_cast<int>(s.increments.front().rows());
  w.header({"s_lo", "s_hi"}, d, d);
  for (int k = 0; k < s.cells(); ++k) w.row({s.grid[k], s.grid[k + 1]}, s.increments[k]);
  json out = problem_summary(c);
  out["sigma"] = sigma_json(s);
  out["csv"] = "sigma.csv";
  return out;
}

json task_resolve(const JobConfig& c, const std::string& dir) {
  const Problem& p = c.job.problem;
  const cd lam = c.lambdas.front();
  const auto xs = c.x_grid.points();
  const GreenKernel g(p, c.job.tau, lam, xs.back());
  const WeightedFunction f = c.function.build(p.sys.n());
  const auto ys = green_apply(g, f, xs);
  auto os = open_out(dir, "resolve.csv");
  CsvWriter w(os);
  w.header({"x"}, p.sys.n(), 1);
  for (std::size_t k = 0; k < xs.size(); ++k) w.row({xs[k]}, ys[k]);
  json out = problem_summary(c);
  out["lambda"] = to_json(lam);
  out["points"] = xs.size();
  out["csv"] = "resolve.csv";
  return out;
}

json task_fourier(const JobConfig& c, const std::string& dir) {
  const Problem& p = c.job.problem;
  const auto ss = c.grid.points();
  const auto fh = fourier(p, c.function.build(p.sys.n()), ss, c.workers);
  auto os = open_out(dir, "fourier.csv");
  CsvWriter w(os);
  w.header({"s"}, static_cast<int>(fh.front().size()), 1);
  for (std::size_t k = 0; k < ss.size(); ++k) w.row({ss[k]}, fh[k]);
  json out = problem_summary(c);
  out["points"] = ss.size();
  out["csv"] = "fourier.csv";
  return out;
}

json task_roundtrip(const JobConfig& c) {
  const Problem& p = c.job.problem;
  const DistributionFunction s = compute_sigma(c);
  const WeightedFunction f = c.function.build(p.sys.n());
  json out = problem_summary(c);
  out["sigma"] = sigma_json(s);
  out["parseval_defect"] = parseval_defect(p, s, f, c.workers);
  out["roundtrip_error"] = roundtrip_error(p, s, f, f.hi, c.workers);
  return out;
}

json task_check(const JobConfig& c) {
  const Problem& p = c.job.problem;
  const DecomposingTriplet& t = p.triplet;
  std::mt19937_64 rng(20240601);
  json inv;
  inv["relation_hat_hat"] = p.U.residuals.hat_hat;
  inv["relation_one_hat"] = p.U.residuals.one_hat;
  inv["relation_one_one"] = p.U.residuals.one_one;
  inv["extension"] = p.U.extension_residual;
  inv["endpoint_identity"] = endpoint_identity_residual(p.form);
  inv["green_identity"] = green_identity_residual(t, 20, rng);
  inv["triplet_surjective"] = triplet_surjective(t);

  const int count = static_cast<int>(c.lambdas.size());
  std::vector<WeylData> lower(count), upper(count);
  std::vector<MTau> mt(count);
  std::vector<double> margin(count), mstar(count), tri_ll(count), tri_lr(count), base(count);
  parallel_for(count, c.workers, [&](int k) {
    const cd l = c.lambdas[k];
    const cd lo = l.imag() < 0 ? l : std::conj(l);
    lower[k] = weyl_data(p, lo);
    upper[k] = weyl_data(p, std::conj(lo));
    const WeylData& w = l.imag() < 0 ? lower[k] : upper[k];
    mt[k] = m_tau(p, c.job.tau, w);
    margin[k] = lower_bound_margin(p, w, mt[k]);
    base[k] = base_condition_residual(p, w);
    const Mat other = m_tau(p, c.job.tau, l.imag() < 0 ? upper[k] : lower[k]).m;
    mstar[k] = max_abs(other.adjoint() - mt[k].m) / std::max(1.0, max_abs(mt[k].m));
    const auto tr = triangularity(p, l.imag() < 0 ? mt[k].m : other);
    tri_ll[k] = tr.first;
    tri_lr[k] = tr.second;
  });
  double blk = 0, sym = 0, agree = 0, cond = 0, lb = 0, ms = 0, tll = 0, tlr = 0, bc = 0;
  for (int k = 0; k < count; ++k) {
    blk = std::max({blk, lower[k].block_residual, upper[k].block_residual});
    sym = std::max(sym, symmetry_residual(lower[k], upper[k]));
    agree = std::max(agree, mt[k].agreement);
    cond = std::max(cond, mt[k].condition_residual);
    lb = std::min(lb, margin[k]);
    ms = std::max(ms, mstar[k]);
    tll = std::max(tll, tri_ll[k]);
    tlr = std::max(tlr, tri_lr[k]);
    bc = std::max(bc, base[k]);
  }
  inv["weyl_block_identities"] = blk;
  inv["weyl_symmetry"] = sym;
  inv["base_conditions"] = bc;
  inv["m_route_agreement"] = agree;
  inv["m_condition_residual"] = cond;
  inv["m_adjoint_symmetry"] = ms;
  inv["m_lower_bound_min_eigenvalue"] = lb;
  if (c.job.tau.kind != TauKind::General) {
    inv["triangular_lower_left"] = tll;
    inv["triangular_lower_right"] = tlr;
  }
  if (c.job.reduction) {
    const Reduction& r = *c.job.reduction;
    std::vector<Vec> jets;
    const int N = static_cast<int>(r.jet_to_bold.cols());
    for (int k = 0; k < N; ++k) jets.push_back(Vec::Unit(N, k));
    inv["reduction_fidelity"] = reduction_fidelity(r, cd(1.0, 0.5), r.sys.a + c.fidelity_t_end, jets);
  }
  if (t.tag != CaseTag::EqualIndices) {
    const SF0Report sf = sf0_criteria(p, c.job.tau, c.sf0_ys, c.sf0_tol);
    inv["sf0_B_limit"] = sf.B_limit;
    inv["sf0_Bhat_limit"] = sf.Bhat_limit;
    inv["sf0_verdict"] = sf.verdict;
  }
  json out = problem_summary(c);
  out["lambda_samples"] = count;
  out["invariants"] = inv;
  return out;
}

}  // namespace

const std::vector<std::string>& task_names() {
  static const std::vector<std::string> names = {"indices", "mfun",      "sigma", "resolve",
                                                 "fourier", "roundtrip", "check"};
  return names;
}

json run_task(const JobConfig& c, const std::string& out_dir) {
  json out;
  if (c.task == "indices") out = task_indices(c);
  else if (c.task == "mfun") out = task_mfun(c, out_dir);
  else if (c.task == "sigma") out = task_sigma(c, out_dir);
  else if (c.task == "resolve") out = task_resolve(c, out_dir);
  else if (c.task == "fourier") out = task_fourier(c, out_dir);
  else if (c.task == "roundtrip") out = task_roundtrip(c);
  else if (c.task == "check") out = task_check(c);
  else fail(Errc::ConfigError, "unknown task '" + c.task + "'");
  out["task"] = c.task;
  auto os = open_out(out_dir, "summary.json");
  os << out.dump(2) << '\n';
  return out;
}

}  // namespace weylkit::cli
