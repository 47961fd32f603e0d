#include "weylkit/ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "weylkit/error.hpp"

namespace weylkit {
namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

double error_norm(const Mat& err, const Mat& y0, const Mat& y1, const OdeOptions& o) {
  double acc = 0.0;
  const Eigen::Index count = err.size();
  for (Eigen::Index k = 0; k < count; ++k) {
    const double sc = o.atol + o.rtol * std::max(std::abs(y0(k)), std::abs(y1(k)));
    const double r = std::abs(err(k)) / sc;
    acc += r * r;
  }
  return std::sqrt(acc / static_cast<double>(std::max<Eigen::Index>(count, 1)));
}

}  // namespace

Mat DenseStep::eval(double t) const {
  const double th = (t - t0) / h, th1 = 1.0 - th;
  return r1 + th * (r2 + th1 * (r3 + th * (r4 + th1 * r5)));
}

Mat DenseSolution::eval(double t) const {
  if (steps_.empty()) return y_begin_;
  // Steps are stored in integration order; locate by interval membership.
  const bool forward = t_end_ >= t_begin_;
  auto before = [&](const DenseStep& s, double x) {
    const double end = s.t0 + s.h;
    return forward ? end < x : end > x;
  };
  auto it = std::lower_bound(steps_.begin(), steps_.end(), t, before);
  if (it == steps_.end()) it = std::prev(steps_.end());
  return it->eval(t);
}

std::vector<double> DenseSolution::knots() const {
  std::vector<double> out;
  out.push_back(t_begin_);
  for (const auto& s : steps_) out.push_back(s.t0 + s.h);
  if (t_end_ < t_begin_) std::reverse(out.begin(), out.end());
  return out;
}

LinearOde::LinearOde(Generator A, bool constant, OdeOptions opts)
    : A_(std::move(A)), constant_(constant), opts_(opts) {}

Mat LinearOde::solve(const Mat& y0, double t0, double t1) const { return run(y0, t0, t1, nullptr, nullptr, nullptr); }

std::vector<Mat> LinearOde::solve_at(const Mat& y0, double t0, const std::vector<double>& ts) const {
  std::vector<Mat> vals;
  if (ts.empty()) return vals;
  const bool forward = ts.back() >= t0;
  std::vector<double> order = ts;
  if (!forward) std::reverse(order.begin(), order.end());
  run(y0, t0, order.back(), nullptr, &order, &vals);
  if (!forward) std::reverse(vals.begin(), vals.end());
  return vals;
}

DenseSolution LinearOde::solve_dense(const Mat& y0, double t0, double t1) const {
  DenseSolution d;
  run(y0, t0, t1, &d, nullptr, nullptr);
  return d;
}

Mat LinearOde::run(const Mat& y0, double t0, double t1, DenseSolution* dense, const std::vector<double>* outs,
                   std::vector<Mat>* out_vals) const {
  if (dense) {
    dense->t_begin_ = t0;
    dense->t_end_ = t1;
    dense->y_begin_ = y0;
    dense->steps_.clear();
  }
  std::size_t next_out = 0;
  Mat y = y0;
  if (outs) {
    // Outputs exactly at t0.
    while (next_out < outs->size() && (*outs)[next_out] == t0) {
      out_vals->push_back(y);
      ++next_out;
    }
  }
  if (t1 == t0 || y.size() == 0) {
    if (outs)
      while (next_out < outs->size()) {
        out_vals->push_back(y);
        ++next_out;
      }
    return y;
  }
  const double dir = t1 > t0 ? 1.0 : -1.0;
  const double span = std::abs(t1 - t0);

  Mat Aconst;
  if (constant_) Aconst = A_(t0);
  auto gen = [&](double t) -> Mat { return constant_ ? Aconst : A_(t); };

  // Initial step from the size of the generator.
  const double anorm = std::max(gen(t0).cwiseAbs().rowwise().sum().maxCoeff(), 1e-12);
  double h = std::min(span, 0.5 * std::pow(opts_.rtol, 0.2) / anorm);
  h = std::max(h, 1e-12 * std::max(1.0, span));

  double t = t0;
  Mat k1 = gen(t) * y;
  long steps = 0;
  while (dir * (t1 - t) > 0) {
    if (++steps > opts_.max_steps) fail(Errc::IntegratorFailure, "maximum step count exceeded");
    double target = t1;
    if (outs && next_out < outs->size()) target = (*outs)[next_out];
    double hs = std::min(h, std::abs(target - t));
    bool clipped = hs < h;
    const double hh = dir * hs;

    const Mat k2 = gen(t + c2 * hh) * (y + hh * (a21 * k1));
    const Mat k3 = gen(t + c3 * hh) * (y + hh * (a31 * k1 + a32 * k2));
    const Mat k4 = gen(t + c4 * hh) * (y + hh * (a41 * k1 + a42 * k2 + a43 * k3));
    const Mat k5 = gen(t + c5 * hh) * (y + hh * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Mat k6 = gen(t + hh) * (y + hh * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Mat ynew = y + hh * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    const Mat k7 = gen(t + hh) * ynew;
    const Mat err = hh * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double en = error_norm(err, y, ynew, opts_);

    if (en <= 1.0 || hs <= 1e-14 * std::max(1.0, std::abs(t))) {
      if (!(std::isfinite(en))) fail(Errc::IntegratorFailure, "non-finite state");
      if (dense) {
        DenseStep s;
        s.t0 = t;
        s.h = hh;
        s.r1 = y;
        const Mat ydiff = ynew - y;
        const Mat bspl = hh * k1 - ydiff;
        s.r2 = ydiff;
        s.r3 = bspl;
        s.r4 = ydiff - hh * k7 - bspl;
        s.r5 = hh * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
        dense->steps_.push_back(std::move(s));
      }
      const bool hit_target = clipped || hs == std::abs(target - t);
      t = hit_target ? target : t + hh;
      y = ynew;
      k1 = k7;
      if (outs && hit_target) {
        while (next_out < outs->size() && (*outs)[next_out] == t) {
          out_vals->push_back(y);
          ++next_out;
        }
      }
      const double fac = en > 0 ? 0.9 * std::pow(en, -0.2) : 5.0;
      const double grow = std::clamp(fac, 0.2, 5.0);
      // A clipped step says nothing about the admissible step size.
      if (!clipped) h = hs * grow;
      else h = std::max(h, hs * grow);
    } else {
      if (!std::isfinite(en)) {
        h = hs * 0.1;
      } else {
        h = hs * std::clamp(0.9 * std::pow(en, -0.2), 0.1, 1.0);
      }
      if (h < 1e-15 * std::max(1.0, std::abs(t))) {
        std::ostringstream os;
        os << "step size underflow at t = " << t;
        fail(Errc::IntegratorFailure, os.str());
      }
    }
  }
  if (outs)
    while (next_out < outs->size()) {
      out_vals->push_back(y);
      ++next_out;
    }
  return y;
}

}  // namespace weylkit
