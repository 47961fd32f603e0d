#include "weylkit/sampler.hpp"

#include <algorithm>

#include <boost/math/interpolators/makima.hpp>

#include "weylkit/error.hpp"

namespace weylkit {

struct ScalarSampler::Table {
  double lo = 0, hi = 0;
  std::vector<double> ts;
  std::vector<cd> values;
  std::unique_ptr<boost::math::interpolators::makima<std::vector<double>>> re, im;
};

ScalarSampler ScalarSampler::constant(cd value) {
  ScalarSampler s = polynomial({value});
  return s;
}

ScalarSampler ScalarSampler::polynomial(std::vector<cd> coeffs) {
  ScalarSampler s;
  while (coeffs.size() > 1 && coeffs.back() == cd(0.0)) coeffs.pop_back();
  if (coeffs.empty()) coeffs.push_back(0.0);
  s.coeffs_ = std::move(coeffs);
  s.table_.reset();
  return s;
}

ScalarSampler ScalarSampler::table(std::vector<double> ts, std::vector<cd> values) {
  if (ts.size() != values.size() || ts.size() < 4)
    fail(Errc::ConfigError, "table sampler needs at least 4 matching (t, value) pairs");
  if (!std::is_sorted(ts.begin(), ts.end()) || std::adjacent_find(ts.begin(), ts.end()) != ts.end())
    fail(Errc::ConfigError, "table sampler abscissae must be strictly increasing");
  auto tab = std::make_shared<Table>();
  tab->lo = ts.front();
  tab->hi = ts.back();
  std::vector<double> x1 = ts, x2 = ts, yr, yi;
  for (const auto& v : values) {
    yr.push_back(v.real());
    yi.push_back(v.imag());
  }
  using Interp = boost::math::interpolators::makima<std::vector<double>>;
  tab->re = std::make_unique<Interp>(std::move(x1), std::move(yr));
  tab->im = std::make_unique<Interp>(std::move(x2), std::move(yi));
  tab->ts = std::move(ts);
  tab->values = std::move(values);
  ScalarSampler s;
  s.coeffs_.clear();
  s.table_ = std::move(tab);
  return s;
}

cd ScalarSampler::operator()(double t) const {
  if (table_) {
    // Constant extension outside the tabulated range.
    const double tc = std::clamp(t, table_->lo, table_->hi);
    return {(*table_->re)(tc), (*table_->im)(tc)};
  }
  cd acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

MatrixSampler::MatrixSampler(int rows, int cols, std::vector<ScalarSampler> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (static_cast<int>(entries_.size()) != rows * cols)
    fail(Errc::ShapeMismatch, "matrix sampler entry count does not match its shape");
  constant_ = std::all_of(entries_.begin(), entries_.end(), [](const ScalarSampler& s) { return s.is_constant(); });
  if (constant_) {
    cached_.resize(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) cached_(r, c) = entries_[r * cols + c](0.0);
  }
}

MatrixSampler MatrixSampler::constant(const Mat& value) {
  MatrixSampler s;
  s.rows_ = static_cast<int>(value.rows());
  s.cols_ = static_cast<int>(value.cols());
  s.constant_ = true;
  s.cached_ = value;
  return s;
}

MatrixSampler MatrixSampler::from_function(int rows, int cols, std::function<Mat(double)> fn) {
  MatrixSampler s;
  s.rows_ = rows;
  s.cols_ = cols;
  s.constant_ = false;
  s.fn_ = std::move(fn);
  return s;
}

Mat MatrixSampler::operator()(double t) const {
  if (constant_) return cached_;
  if (fn_) return fn_(t);
  Mat out(rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out(r, c) = entries_[r * cols_ + c](t);
  return out;
}

LambdaSampler constant_lambda_sampler(const Mat& value) {
  return [value](cd) { return value; };
}

LambdaSampler polynomial_lambda_sampler(std::vector<Mat> coeffs) {
  if (coeffs.empty()) fail(Errc::ShapeMismatch, "empty polynomial sampler");
  return [coeffs = std::move(coeffs)](cd lam) {
    Mat acc = Mat::Zero(coeffs[0].rows(), coeffs[0].cols());
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * lam + *it;
    return acc;
  };
}

}  // namespace weylkit
