#include "bcs/image.hpp"

#include <cmath>
#include <string>

#include "bcs/errors.hpp"

namespace bcs {

BitonalImage::BitonalImage(Index width, Index height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width < 0 || height < 0 || static_cast<Index>(pixels_.size()) != width * height)
    throw InvalidParameter("bitonal image: expected " + std::to_string(width * height) +
                           " pixels, got " + std::to_string(pixels_.size()));
  for (std::uint8_t v : pixels_)
    if (v > 1) throw InvalidParameter("bitonal image: pixel value " + std::to_string(v));
}

DenseMatrix BitonalImage::to_matrix() const {
  DenseMatrix out(height_, width_);
  for (Index r = 0; r < height_; ++r)
    for (Index c = 0; c < width_; ++c) out(r, c) = at(r, c);
  return out;
}

BitonalImage BitonalImage::from_matrix(const DenseMatrix& values) {
  std::vector<std::uint8_t> pixels;
  pixels.reserve(static_cast<std::size_t>(values.size()));
  for (Index r = 0; r < values.rows(); ++r)
    for (Index c = 0; c < values.cols(); ++c) {
      const double v = values(r, c);
      if (v != 0.0 && v != 1.0)
        throw InvalidParameter("image is not bitonal: pixel (" + std::to_string(r) + ", " +
                               std::to_string(c) + ") = " + std::to_string(v));
      pixels.push_back(v == 1.0 ? 1 : 0);
    }
  return BitonalImage(values.cols(), values.rows(), std::move(pixels));
}

BitonalImage BitonalImage::from_rounded(const DenseMatrix& values) {
  return from_matrix(values.unaryExpr([](double v) { return v >= 0.5 ? 1.0 : 0.0; }));
}

Index pixel_errors(const BitonalImage& a, const BitonalImage& b) {
  if (a.width() != b.width() || a.height() != b.height())
    throw DimensionMismatch("pixel_errors: image sizes differ");
  Index count = 0;
  for (std::size_t i = 0; i < a.pixels().size(); ++i) count += a.pixels()[i] != b.pixels()[i];
  return count;
}

BitonalImage make_glyph_image(Index side) {
  if (side < 4) throw InvalidParameter("glyph side must be >= 4");
  // Shapes are laid out on a 37-unit canvas and scaled.
  const double scale = 37.0 / static_cast<double>(side);
  const double center = 18.0;
  std::vector<std::uint8_t> pixels;
  pixels.reserve(static_cast<std::size_t>(side * side));
  for (Index r = 0; r < side; ++r) {
    for (Index c = 0; c < side; ++c) {
      const double y = (static_cast<double>(r) + 0.5) * scale - 0.5 - center;
      const double x = (static_cast<double>(c) + 0.5) * scale - 0.5 - center;
      const double radius = std::hypot(x, y);
      const bool ring = radius >= 9.5 && radius <= 15.5;
      const bool bar = std::abs(y) <= 2.5 && std::abs(x) <= 7.5;
      const bool post = std::abs(x) <= 2.5 && std::abs(y) <= 7.5;
      pixels.push_back(ring || bar || post ? 1 : 0);
    }
  }
  return BitonalImage(side, side, std::move(pixels));
}

}  // namespace bcs
