#pragma once

#include <string>
#include <string_view>

#include "bcs/linalg.hpp"

namespace bcs {

// Text matrix format: "rows cols" on the first line, then the entries row by
// row with 17 significant digits (lossless for doubles).
std::string format_matrix(const DenseMatrix& matrix);
DenseMatrix parse_matrix(std::string_view text);

// Vectors are whitespace-separated values in any layout.
std::string format_vector(const DenseVector& v);
DenseVector parse_vector(std::string_view text);

}  // namespace bcs
