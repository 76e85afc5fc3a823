#pragma once

#include <cstdint>
#include <vector>

#include "bcs/linalg.hpp"

namespace bcs {

// Two-valued raster, row-major, pixels strictly 0 or 1.
class BitonalImage {
 public:
  BitonalImage() = default;
  // Throws InvalidParameter if a pixel is not 0/1 or the size is wrong.
  BitonalImage(Index width, Index height, std::vector<std::uint8_t> pixels);

  Index width() const { return width_; }
  Index height() const { return height_; }
  std::uint8_t at(Index row, Index col) const {
    return pixels_[static_cast<std::size_t>(row * width_ + col)];
  }
  const std::vector<std::uint8_t>& pixels() const { return pixels_; }

  // height x width matrix of 0.0 / 1.0.
  DenseMatrix to_matrix() const;
  // Throws InvalidParameter for entries other than exactly 0 or 1.
  static BitonalImage from_matrix(const DenseMatrix& values);
  // Rounds each entry to {0, 1} (>= 0.5 -> 1).
  static BitonalImage from_rounded(const DenseMatrix& values);

  friend bool operator==(const BitonalImage&, const BitonalImage&) = default;

 private:
  Index width_ = 0;
  Index height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

// Number of differing pixels; throws DimensionMismatch on size mismatch.
Index pixel_errors(const BitonalImage& a, const BitonalImage& b);

// Deterministic test glyph: a ring around a plus sign, scaled to `side`.
// This is the image shipped as data/glyph37.pbm and data/glyph16.pbm.
BitonalImage make_glyph_image(Index side);

}  // namespace bcs
