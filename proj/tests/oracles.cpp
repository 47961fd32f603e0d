#include "oracles.hpp"

#include <boost/numeric/odeint.hpp>

namespace oracle {

namespace odeint = boost::numeric::odeint;
using State = std::vector<cd>;

std::vector<Vec> odeint_solve(const Generator& A, const Vec& y0, double t0, const std::vector<double>& ts,
                              double tol) {
  State x(y0.data(), y0.data() + y0.size());
  auto rhs = [&A](const State& s, State& ds, double t) {
    const Vec v = Eigen::Map<const Vec>(s.data(), static_cast<Eigen::Index>(s.size()));
    const Vec r = A(t) * v;
    ds.assign(r.data(), r.data() + r.size());
  };
  auto stepper = odeint::make_dense_output(tol, tol, odeint::runge_kutta_dopri5<State>());
  std::vector<Vec> out;
  double t = t0;
  for (double target : ts) {
    const double dt = target >= t ? 1e-3 : -1e-3;
    odeint::integrate_adaptive(stepper, rhs, x, t, target, dt);
    t = target;
    out.push_back(Eigen::Map<const Vec>(x.data(), static_cast<Eigen::Index>(x.size())));
  }
  return out;
}

std::vector<Vec> scalar_jets(const std::vector<cd>& c, cd lambda, const Vec& jet0, double t0,
                             const std::vector<double>& ts) {
  const int N = static_cast<int>(c.size()) - 1;
  Mat comp = Mat::Zero(N, N);
  for (int k = 0; k + 1 < N; ++k) comp(k, k + 1) = 1.0;
  for (int k = 0; k < N; ++k) comp(N - 1, k) = -c[k] / c[N];
  comp(N - 1, 0) += lambda / c[N];
  return odeint_solve([comp](double) { return comp; }, jet0, t0, ts);
}

cd truncated_shooting_m(cd lambda, double X) {
  Mat A(2, 2);
  A << 0.0, 1.0, -lambda, 0.0;
  Vec yX(2);
  yX << 0.0, 1.0;
  const Vec y0 = odeint_solve([A](double) { return A; }, yX, X, {0.0}).front();
  return y0(1) / y0(0);
}

}  // namespace oracle
