#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "weylkit/blockspace.hpp"

namespace weylkit {

// Scalar coefficient t -> value: a polynomial in t or a tabulated function
// with cubic (modified Akima) interpolation of real and imaginary parts.
class ScalarSampler {
 public:
  ScalarSampler() : coeffs_{cd(0.0)} {}
  static ScalarSampler constant(cd value);
  static ScalarSampler polynomial(std::vector<cd> coeffs);
  static ScalarSampler table(std::vector<double> ts, std::vector<cd> values);

  cd operator()(double t) const;
  bool is_constant() const { return table_ == nullptr && coeffs_.size() <= 1; }

 private:
  struct Table;
  std::vector<cd> coeffs_;
  std::shared_ptr<const Table> table_;
};

class MatrixSampler {
 public:
  MatrixSampler() = default;
  MatrixSampler(int rows, int cols, std::vector<ScalarSampler> entries);
  static MatrixSampler constant(const Mat& value);
  static MatrixSampler from_function(int rows, int cols, std::function<Mat(double)> fn);

  Mat operator()(double t) const;
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_constant() const { return constant_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  bool constant_ = true;
  Mat cached_;
  std::vector<ScalarSampler> entries_;
  std::function<Mat(double)> fn_;
};

// λ -> matrix, used for boundary parameters.
using LambdaSampler = std::function<Mat(cd)>;

LambdaSampler constant_lambda_sampler(const Mat& value);
// Entrywise polynomials in λ: coeffs[k] is the matrix multiplying λ^k.
LambdaSampler polynomial_lambda_sampler(std::vector<Mat> coeffs);

}  // namespace weylkit
