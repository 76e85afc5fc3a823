#include "bcs/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bcs/errors.hpp"

namespace bcs {
namespace {

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  // Skips whitespace and '#' comments.
  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  void expect_magic(std::string_view magic) {
    if (text_.substr(0, magic.size()) != magic)
      throw ParseError("expected magic '" + std::string(magic) + "'", 0);
    pos_ = magic.size();
    if (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
        text_[pos_] != '#')
      throw ParseError("malformed magic number", pos_);
  }

  long read_uint(const char* what) {
    skip_space();
    const std::size_t start = pos_;
    long value = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (ec != std::errc() || value < 0 ||
        (ptr != text_.data() + text_.size() && !std::isspace(static_cast<unsigned char>(*ptr)) &&
         *ptr != '#'))
      throw ParseError(std::string("invalid ") + what, start);
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

  // Next single pixel character of a P1 body.
  std::uint8_t read_bit() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of pixel data", pos_);
    const char c = text_[pos_];
    if (c != '0' && c != '1') throw ParseError(std::string("invalid pixel '") + c + "'", pos_);
    ++pos_;
    return c == '1' ? 1 : 0;
  }

  void expect_end() {
    skip_space();
    if (pos_ != text_.size()) throw ParseError("trailing data after pixels", pos_);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

BitonalImage parse_pbm(std::string_view text) {
  Scanner scan(text);
  scan.expect_magic("P1");
  const long width = scan.read_uint("width");
  const long height = scan.read_uint("height");
  std::vector<std::uint8_t> pixels;
  pixels.reserve(static_cast<std::size_t>(width * height));
  for (long i = 0; i < width * height; ++i) pixels.push_back(scan.read_bit());
  scan.expect_end();
  return BitonalImage(width, height, std::move(pixels));
}

std::string format_pbm(const BitonalImage& image) {
  std::ostringstream out;
  out << "P1\n" << image.width() << ' ' << image.height() << '\n';
  for (Index r = 0; r < image.height(); ++r) {
    std::size_t column = 0;
    for (Index c = 0; c < image.width(); ++c) {
      if (column + 2 > 70) {
        out << '\n';
        column = 0;
      } else if (c > 0) {
        out << ' ';
        ++column;
      }
      out << static_cast<int>(image.at(r, c));
      ++column;
    }
    out << '\n';
  }
  return out.str();
}

BitonalImage read_pbm(const std::string& path) { return parse_pbm(read_text_file(path)); }

void write_pbm(const std::string& path, const BitonalImage& image) {
  write_text_file(path, format_pbm(image));
}

std::string format_pgm(const DenseMatrix& values) {
  std::ostringstream out;
  out << "P2\n" << values.cols() << ' ' << values.rows() << '\n' << kPgmMaxValue << '\n';
  for (Index r = 0; r < values.rows(); ++r) {
    for (Index c = 0; c < values.cols(); ++c) {
      const double v = std::clamp(values(r, c), 0.0, 1.0);
      if (c > 0) out << ((c % 10 == 0) ? '\n' : ' ');
      out << static_cast<long>(std::lround(v * kPgmMaxValue));
    }
    out << '\n';
  }
  return out.str();
}

void write_pgm(const std::string& path, const DenseMatrix& values) {
  write_text_file(path, format_pgm(values));
}

DenseMatrix parse_pgm(std::string_view text) {
  Scanner scan(text);
  scan.expect_magic("P2");
  const long width = scan.read_uint("width");
  const long height = scan.read_uint("height");
  const long maxval = scan.read_uint("maxval");
  if (maxval < 1 || maxval > kPgmMaxValue) throw ParseError("maxval out of range", 0);
  DenseMatrix out(height, width);
  for (long r = 0; r < height; ++r)
    for (long c = 0; c < width; ++c) {
      const long v = scan.read_uint("sample");
      if (v > maxval) throw ParseError("sample exceeds maxval", 0);
      out(r, c) = static_cast<double>(v) / static_cast<double>(maxval);
    }
  scan.expect_end();
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace bcs
