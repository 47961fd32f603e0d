#include "emit.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace weylkit::cli {

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // drop the sign of zero
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), end);
}

void CsvWriter::header(const std::vector<std::string>& lead, int rows, int cols) {
  bool first = true;
  for (const auto& h : lead) {
    os_ << (first ? "" : ",") << h;
    first = false;
  }
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const std::string tag = std::to_string(r) + "_" + std::to_string(c);
      os_ << (first ? "" : ",") << "re_" << tag << ",im_" << tag;
      first = false;
    }
  os_ << '\n';
}

void CsvWriter::row(const std::vector<double>& lead, const Mat& m) {
  bool first = true;
  for (double v : lead) {
    os_ << (first ? "" : ",") << fmt(v);
    first = false;
  }
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      os_ << (first ? "" : ",") << fmt(m(r, c).real()) << ',' << fmt(m(r, c).imag());
      first = false;
    }
  os_ << '\n';
}

nlohmann::json to_json(cd z) { return nlohmann::json::array({z.real(), z.imag()}); }

nlohmann::json to_json(const Mat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace weylkit::cli
