#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "weylkit/blockspace.hpp"

namespace weylkit::cli {

// Shortest decimal that reads back to the same double.
std::string fmt(double x);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}
  void header(const std::vector<std::string>& lead, int rows, int cols);
  // Leading real columns, then row-major re/im pairs of m.
  void row(const std::vector<double>& lead, const Mat& m);

 private:
  std::ostream& os_;
};

nlohmann::json to_json(const Mat& m);
nlohmann::json to_json(cd z);

}  // namespace weylkit::cli
