#include "weylkit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include <boost/math/quadrature/gauss.hpp>

namespace weylkit {
namespace {

constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.0};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double lo, hi;
  Mat value;
  double error;
  bool operator<(const Piece& o) const { return error < o.error; }
};

Piece gk15(const MatFn& f, double lo, double hi) {
  const double c = 0.5 * (lo + hi), r = 0.5 * (hi - lo);
  const Mat fc = f(c);
  Mat k = wgk[7] * fc;
  Mat g = wg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const Mat s = f(c - r * xgk[j]) + f(c + r * xgk[j]);
    k += wgk[j] * s;
    if (j % 2 == 1) g += wg[j / 2] * s;
  }
  Piece p{lo, hi, r * k, 0.0};
  p.error = (r * (k - g)).cwiseAbs().maxCoeff();
  return p;
}

}  // namespace

Mat gauss_legendre_panels(const MatFn& f, const std::vector<double>& knots) {
  using rule = boost::math::quadrature::gauss<double, 16>;
  const auto& x = rule::abscissa();
  const auto& w = rule::weights();
  Mat acc;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double c = 0.5 * (knots[i] + knots[i + 1]), r = 0.5 * (knots[i + 1] - knots[i]);
    if (r == 0.0) continue;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const Mat s = r * w[j] * (f(c - r * x[j]) + f(c + r * x[j]));
      if (acc.size() == 0)
        acc = s;
      else
        acc += s;
    }
  }
  return acc;
}

std::vector<double> refine_knots(const std::vector<double>& knots, double max_len) {
  std::vector<double> out;
  if (knots.empty()) return out;
  out.push_back(knots.front());
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double len = knots[i + 1] - knots[i];
    const int parts = std::max(1, static_cast<int>(std::ceil(std::abs(len) / max_len)));
    for (int k = 1; k <= parts; ++k) out.push_back(k == parts ? knots[i + 1] : knots[i] + len * k / parts);
  }
  return out;
}

QuadResult gauss_kronrod(const MatFn& f, double lo, double hi, double abs_tol, double rel_tol, int max_intervals) {
  return gauss_kronrod(f, std::vector<double>{lo, hi}, abs_tol, rel_tol, max_intervals, nullptr);
}

QuadResult gauss_kronrod(const MatFn& f, const std::vector<double>& knots, double abs_tol, double rel_tol,
                         int max_intervals, std::vector<double>* final_knots) {
  std::priority_queue<Piece> heap;
  Mat total;
  double err = 0.0;
  long evals = 0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    Piece p = gk15(f, knots[i], knots[i + 1]);
    evals += 15;
    if (total.size() == 0)
      total = p.value;
    else
      total += p.value;
    err += p.error;
    heap.push(std::move(p));
  }
  while (err > std::max(abs_tol, rel_tol * total.cwiseAbs().maxCoeff()) &&
         static_cast<int>(heap.size()) < max_intervals) {
    Piece worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi) {
      heap.push(worst);
      break;
    }
    Piece left = gk15(f, worst.lo, mid), right = gk15(f, mid, worst.hi);
    evals += 30;
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(std::move(left));
    heap.push(std::move(right));
  }
  // Resum in interval order; the incremental totals drift and the heap order
  // depends on error ties.
  std::vector<Piece> pieces;
  while (!heap.empty()) {
    pieces.push_back(heap.top());
    heap.pop();
  }
  std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
  Mat sum = Mat::Zero(total.rows(), total.cols());
  double esum = 0.0;
  for (const auto& p : pieces) {
    sum += p.value;
    esum += p.error;
  }
  if (final_knots) {
    final_knots->clear();
    if (!pieces.empty()) final_knots->push_back(pieces.front().lo);
    for (const auto& p : pieces) final_knots->push_back(p.hi);
  }
  return QuadResult{sum, esum, evals};
}

}  // namespace weylkit
