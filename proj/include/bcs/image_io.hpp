#pragma once

#include <string>
#include <string_view>

#include "bcs/image.hpp"
#include "bcs/linalg.hpp"

namespace bcs {

// Plain (ASCII) netpbm I/O. Parse failures raise ParseError carrying the
// byte offset of the offending token.

BitonalImage parse_pbm(std::string_view text);
// "P1", dimensions, then one text line per image row (wrapped at 70 columns).
std::string format_pbm(const BitonalImage& image);
BitonalImage read_pbm(const std::string& path);
void write_pbm(const std::string& path, const BitonalImage& image);

inline constexpr int kPgmMaxValue = 65535;

// Grayscale P2 with maxval 65535; values are clamped to [0, 1] and scaled.
std::string format_pgm(const DenseMatrix& values);
void write_pgm(const std::string& path, const DenseMatrix& values);
// Returns values scaled back to [0, 1].
DenseMatrix parse_pgm(std::string_view text);

// Reads a whole file; throws std::runtime_error when it cannot be opened.
std::string read_text_file(const std::string& path);
// Throws std::runtime_error when the path is not writable.
void write_text_file(const std::string& path, std::string_view content);

}  // namespace bcs
