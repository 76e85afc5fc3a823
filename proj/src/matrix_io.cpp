#include "bcs/matrix_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "bcs/errors.hpp"

namespace bcs {
namespace {

std::string exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Whitespace-separated numbers with their byte offsets.
std::vector<std::pair<double, std::size_t>> numbers(std::string_view text) {
  std::vector<std::pair<double, std::size_t>> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) break;
    const std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    const std::string token(text.substr(start, pos - start));
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size())
      throw ParseError("invalid number '" + token + "'", start);
    out.emplace_back(v, start);
  }
  return out;
}

}  // namespace

std::string format_matrix(const DenseMatrix& matrix) {
  std::ostringstream out;
  out << matrix.rows() << ' ' << matrix.cols() << '\n';
  for (Index r = 0; r < matrix.rows(); ++r) {
    for (Index c = 0; c < matrix.cols(); ++c) out << (c ? " " : "") << exact(matrix(r, c));
    out << '\n';
  }
  return out.str();
}

DenseMatrix parse_matrix(std::string_view text) {
  const auto values = numbers(text);
  if (values.size() < 2) throw ParseError("missing matrix dimensions", 0);
  const double rows = values[0].first;
  const double cols = values[1].first;
  if (rows < 0 || cols < 0 || rows != static_cast<double>(static_cast<Index>(rows)) ||
      cols != static_cast<double>(static_cast<Index>(cols)))
    throw ParseError("invalid matrix dimensions", values[0].second);
  const auto r = static_cast<Index>(rows);
  const auto c = static_cast<Index>(cols);
  if (static_cast<Index>(values.size()) != 2 + r * c)
    throw ParseError("expected " + std::to_string(r * c) + " entries, found " +
                         std::to_string(values.size() - 2),
                     values.back().second);
  DenseMatrix out(r, c);
  for (Index i = 0; i < r * c; ++i) {
    const auto& [v, offset] = values[static_cast<std::size_t>(2 + i)];
    if (!std::isfinite(v)) throw ParseError("non-finite entry", offset);
    out(i / c, i % c) = v;
  }
  return out;
}

std::string format_vector(const DenseVector& v) {
  std::ostringstream out;
  for (Index i = 0; i < v.size(); ++i) out << exact(v(i)) << '\n';
  return out.str();
}

DenseVector parse_vector(std::string_view text) {
  const auto values = numbers(text);
  DenseVector out(static_cast<Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i].first)) throw ParseError("non-finite entry", values[i].second);
    out(static_cast<Index>(i)) = values[i].first;
  }
  return out;
}

}  // namespace bcs
