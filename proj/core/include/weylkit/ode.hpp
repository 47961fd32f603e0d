#pragma once

#include <functional>
#include <vector>

#include "weylkit/blockspace.hpp"

namespace weylkit {

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  long max_steps = 2000000;
};

// One accepted Dormand–Prince step with its continuous extension.
struct DenseStep {
  double t0 = 0.0;
  double h = 0.0;
  Mat r1, r2, r3, r4, r5;
  Mat eval(double t) const;
};

class DenseSolution {
 public:
  DenseSolution() = default;
  Mat eval(double t) const;
  double t_begin() const { return t_begin_; }
  double t_end() const { return t_end_; }
  // Step boundaries in increasing t order.
  std::vector<double> knots() const;
  const std::vector<DenseStep>& steps() const { return steps_; }
  bool empty() const { return steps_.empty(); }
  Mat initial() const { return y_begin_; }

 private:
  friend class LinearOde;
  double t_begin_ = 0.0, t_end_ = 0.0;
  Mat y_begin_;
  std::vector<DenseStep> steps_;
};

// y' = A(t) y for a matrix-valued y, integrated with an embedded
// Dormand–Prince 5(4) pair. Integration may run in either direction.
class LinearOde {
 public:
  using Generator = std::function<Mat(double)>;
  LinearOde(Generator A, bool constant, OdeOptions opts = {});

  Mat solve(const Mat& y0, double t0, double t1) const;
  // Values at sorted output points (all on the same side of t0).
  std::vector<Mat> solve_at(const Mat& y0, double t0, const std::vector<double>& ts) const;
  DenseSolution solve_dense(const Mat& y0, double t0, double t1) const;

 private:
  Mat run(const Mat& y0, double t0, double t1, DenseSolution* dense, const std::vector<double>* outs,
          std::vector<Mat>* out_vals) const;
  Generator A_;
  bool constant_;
  OdeOptions opts_;
};

}  // namespace weylkit
