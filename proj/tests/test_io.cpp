#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>
#include <string>

#include "bcs/errors.hpp"
#include "bcs/experiments.hpp"
#include "bcs/image.hpp"
#include "bcs/image_io.hpp"
#include "bcs/matrix_io.hpp"
#include "bcs/report_io.hpp"

namespace {

using namespace bcs;
namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("bcs_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::size_t count_lines(const std::string& text) {
  std::size_t n = 0;
  for (char c : text) n += c == '\n';
  return n;
}

TEST(Image, Construction) {
  EXPECT_THROW(BitonalImage(2, 2, {0, 1, 2, 0}), InvalidParameter);
  EXPECT_THROW(BitonalImage(2, 2, {0, 1, 0}), InvalidParameter);
  DenseMatrix m(1, 2);
  m << 0.0, 0.5;
  EXPECT_THROW(BitonalImage::from_matrix(m), InvalidParameter);
  const BitonalImage r = BitonalImage::from_rounded(m);
  EXPECT_EQ(r.at(0, 1), 1);
  EXPECT_EQ(pixel_errors(r, BitonalImage(2, 1, {0, 0})), 1);
  EXPECT_THROW(pixel_errors(r, BitonalImage(1, 1, {0})), DimensionMismatch);
}

TEST(Image, GlyphIsBinaryAndMixed) {
  const BitonalImage g = make_glyph_image(37);
  EXPECT_EQ(g.width(), 37);
  EXPECT_EQ(g.height(), 37);
  int ones = 0;
  for (auto v : g.pixels()) ones += v;
  EXPECT_GT(ones, 200);
  EXPECT_LT(ones, 1169);
  EXPECT_EQ(make_glyph_image(37), g);
}

TEST(Image, BundledFilesMatchGenerator) {
  EXPECT_EQ(read_pbm(std::string(BCS_DATA_DIR) + "/glyph37.pbm"), make_glyph_image(37));
  EXPECT_EQ(read_pbm(std::string(BCS_DATA_DIR) + "/glyph16.pbm"), make_glyph_image(16));
}

TEST(Pbm, ParseCheckerboard) {
  const BitonalImage img = parse_pbm("P1\n2 2\n1 0 0 1\n");
  EXPECT_EQ(img, BitonalImage(2, 2, {1, 0, 0, 1}));
}

TEST(Pbm, CommentsAndPackedDigits) {
  const BitonalImage img = parse_pbm("P1 # comment\n# another\n3 1\n101");
  EXPECT_EQ(img, BitonalImage(3, 1, {1, 0, 1}));
}

TEST(Pbm, RoundTrip) {
  const BitonalImage g = make_glyph_image(37);
  EXPECT_EQ(parse_pbm(format_pbm(g)), g);
  const fs::path dir = scratch_dir("pbm");
  write_pbm((dir / "g.pbm").string(), g);
  EXPECT_EQ(read_pbm((dir / "g.pbm").string()), g);
  const std::string text = format_pbm(g);
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) EXPECT_LE(line.size(), 70u);
}

TEST(Pbm, Errors) {
  EXPECT_THROW(parse_pbm("P4\n1 1\n0"), ParseError);
  EXPECT_THROW(parse_pbm("P1\n2 x\n0 0"), ParseError);
  EXPECT_THROW(parse_pbm("P1\n2 1\n0 2"), ParseError);
  EXPECT_THROW(parse_pbm("P1\n2 2\n0 1 1"), ParseError);
  try {
    parse_pbm("P1\n1 1\n7");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 7u);
  }
  EXPECT_THROW(read_pbm("/nonexistent/dir/x.pbm"), std::runtime_error);
}

TEST(Pgm, RoundTripAndClamp) {
  DenseMatrix v(2, 3);
  v << -0.2, 0.0, 0.25, 0.5, 1.0, 1.7;
  const std::string text = format_pgm(v);
  EXPECT_EQ(text.rfind("P2\n3 2\n65535\n", 0), 0u);
  const DenseMatrix back = parse_pgm(text);
  EXPECT_EQ(back(0, 0), 0.0);
  EXPECT_EQ(back(1, 2), 1.0);
  EXPECT_NEAR(back(0, 2), 0.25, 1.0 / 65535);
  EXPECT_THROW(parse_pgm("P2\n1 1\n255\n300\n"), ParseError);
}

TEST(MatrixIo, RoundTripIsLossless) {
  const DenseMatrix m = sample_gaussian_matrix(4, 7, 3);
  EXPECT_EQ(parse_matrix(format_matrix(m)), m);
  const DenseVector v = sample_gaussian_matrix(9, 1, 4).col(0);
  EXPECT_EQ(parse_vector(format_vector(v)), v);
  EXPECT_THROW(parse_matrix("2 2\n1 2 3"), ParseError);
  EXPECT_THROW(parse_vector("1 abc"), ParseError);
}

ExperimentReport tiny_report(std::vector<SolverId> solvers, std::vector<double> grid) {
  Exp1Config cfg;
  cfg.m = 6;
  cfg.n = 10;
  cfg.trials = 2;
  cfg.p_grid = std::move(grid);
  cfg.solvers = std::move(solvers);
  cfg.settings.bssl0.inner_iters = 20;
  cfg.settings.sl0.inner_iters = 20;
  cfg.record_timing = false;
  return run_experiment1(cfg);
}

TEST(Csv, FormatNumber) {
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(1.0 / 3), "0.333333");
  EXPECT_EQ(format_number(std::nan("")), "nan");
  EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
}

TEST(Csv, RowsHeaderAndDeterminism) {
  const ExperimentReport rep = tiny_report({SolverId::kBssl0, SolverId::kBp}, {0.0, 0.5, 1.0});
  const std::string csv = format_csv(rep);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "p,solver,mean_fpr,mean_nsr,mean_runtime_ms,trials");
  EXPECT_EQ(count_lines(csv), 7u);
  EXPECT_NE(csv.find("\n0,bp,"), std::string::npos);
  EXPECT_LT(csv.find("\n0,bp,"), csv.find("\n0,bssl0,"));
  EXPECT_EQ(csv, format_csv(tiny_report({SolverId::kBssl0, SolverId::kBp}, {0.0, 0.5, 1.0})));

  const std::string raw = format_raw_csv(rep);
  EXPECT_EQ(raw.substr(0, raw.find('\n')), "p,solver,trial,seed,fpr,nsr,runtime_ms,failed");
  EXPECT_EQ(count_lines(raw), 13u);

  const fs::path dir = scratch_dir("csv");
  write_csv(rep, (dir / "a.csv").string());
  EXPECT_EQ(read_text_file((dir / "a.csv").string()), csv);
  EXPECT_THROW(write_csv(rep, "/nonexistent/dir/a.csv"), std::runtime_error);
}

TEST(PlotData, SeriesAndSvg) {
  const ExperimentReport rep = tiny_report({SolverId::kSav, SolverId::kOmp}, probability_grid(0.05));
  const std::string fpr = format_series(rep, "fpr");
  EXPECT_EQ(fpr.substr(0, fpr.find('\n')), "# p omp sav");
  EXPECT_EQ(count_lines(fpr), 22u);
  EXPECT_THROW(format_series(rep, "bogus"), InvalidParameter);

  const std::string svg = format_svg(rep, "fpr");
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  // Well-formed: every opened element is closed or self-closing.
  int depth = 0;
  for (std::size_t i = 0; i < svg.size(); ++i) {
    if (svg[i] != '<') continue;
    const std::size_t end = svg.find('>', i);
    ASSERT_NE(end, std::string::npos);
    if (svg[i + 1] == '/') --depth;
    else if (svg[i + 1] != '?' && svg[end - 1] != '/') ++depth;
    ASSERT_GE(depth, 0);
  }
  EXPECT_EQ(depth, 0);

  const fs::path dir = scratch_dir("plot");
  write_plotdata(rep, (dir / "out").string());
  for (const char* f : {"fpr.dat", "nsr.dat", "runtime_ms.dat", "fpr.svg"})
    EXPECT_TRUE(fs::exists(dir / "out" / f)) << f;
}

TEST(PlotData, EmptySolverSetRejected) {
  ExperimentReport rep;
  EXPECT_THROW(format_series(rep, "fpr"), InvalidParameter);
}

}  // namespace
