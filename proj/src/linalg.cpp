#include "bcs/linalg.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <unordered_set>

#include "bcs/errors.hpp"
#include "bcs/rng.hpp"

namespace bcs {

DenseVector ones(Index n) { return DenseVector::Ones(n); }

DenseMatrix sample_gaussian_matrix(Index m, Index n, std::uint64_t seed) {
  if (m < 1 || n < 1) throw InvalidParameter("gaussian matrix needs m, n >= 1");
  Rng rng(seed);
  DenseMatrix phi(m, n);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j) phi(i, j) = rng.normal();
  return phi;
}

DenseVector sample_binary_signal(Index n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0))
    throw InvalidParameter("probability p must lie in [0, 1], got " + std::to_string(p));
  Rng rng(seed);
  DenseVector x(n);
  for (Index j = 0; j < n; ++j) x(j) = rng.uniform() < p ? 1.0 : 0.0;
  return x;
}

std::vector<Index> sample_without_replacement(Index population, Index count,
                                              std::uint64_t seed) {
  if (count < 0 || count > population)
    throw InvalidParameter("cannot draw " + std::to_string(count) + " of " +
                           std::to_string(population) + " without replacement");
  // Partial Fisher-Yates.
  std::vector<Index> pool(static_cast<std::size_t>(population));
  for (Index i = 0; i < population; ++i) pool[static_cast<std::size_t>(i)] = i;
  Rng rng(seed);
  for (Index i = 0; i < count; ++i) {
    const auto j = i + static_cast<Index>(rng.below(static_cast<std::uint64_t>(population - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(count));
  return pool;
}

namespace {

double min_pivot(const Eigen::LLT<DenseMatrix>& llt) {
  const auto diag = llt.matrixLLT().diagonal();
  return diag.cwiseAbs2().minCoeff();
}

}  // namespace

GramFactorization::GramFactorization(DenseMatrix phi) : phi_(std::move(phi)) {
  const Index m = phi_.rows();
  if (m == 0 || phi_.cols() == 0) throw DimensionMismatch("empty measurement matrix");
  if (!phi_.allFinite()) throw InvalidParameter("measurement matrix has non-finite entries");

  DenseMatrix gram = DenseMatrix::Zero(m, m);
  gram.selfadjointView<Eigen::Lower>().rankUpdate(phi_);
  gram = gram.selfadjointView<Eigen::Lower>();

  llt_.compute(gram);
  const double max_diag = gram.diagonal().maxCoeff();
  if (!(max_diag > 0.0)) throw SingularMatrix("Phi Phi^T is zero");
  if (llt_.info() != Eigen::Success || min_pivot(llt_) <= 1e-12 * max_diag)
    throw SingularMatrix("Phi Phi^T is rank deficient (Phi lacks full row rank)");
}

DenseVector GramFactorization::solve(const DenseVector& v) const {
  if (v.size() != rows())
    throw DimensionMismatch("Gram solve: vector length " + std::to_string(v.size()) +
                            " != " + std::to_string(rows()));
  return llt_.solve(v);
}

GramFactorization gram_factorize(const DenseMatrix& phi) { return GramFactorization(phi); }

DenseVector min_norm_solution(const GramFactorization& fac, const DenseVector& y) {
  return fac.phi().transpose() * fac.solve(y);
}

void affine_project_inplace(const GramFactorization& fac, const DenseVector& y,
                            DenseVector& z) {
  if (z.size() != fac.cols())
    throw DimensionMismatch("projection: iterate length " + std::to_string(z.size()) +
                            " != " + std::to_string(fac.cols()));
  DenseVector residual = fac.phi() * z - y;
  z.noalias() -= fac.phi().transpose() * fac.solve(residual);
}

DenseVector affine_project(const GramFactorization& fac, const DenseVector& y,
                           const DenseVector& z) {
  DenseVector out = z;
  affine_project_inplace(fac, y, out);
  return out;
}

DenseVector complement_transform(const DenseMatrix& phi, const DenseVector& y) {
  if (y.size() != phi.rows())
    throw DimensionMismatch("complement: y length " + std::to_string(y.size()) +
                            " != rows " + std::to_string(phi.rows()));
  return phi.rowwise().sum() - y;
}

namespace {

// exp(-2 pi i e / K) with the exponent reduced mod K first, which keeps the
// phase accurate for large k*l products.
std::complex<double> root_of_unity(Index exponent, Index k) {
  const Index reduced = exponent % k;
  const double angle = -2.0 * std::numbers::pi * static_cast<double>(reduced) /
                       static_cast<double>(k);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

ComplexMatrix dft_matrix(Index k) {
  if (k < 1) throw InvalidParameter("DFT size must be >= 1");
  ComplexMatrix w(k, k);
  for (Index r = 0; r < k; ++r)
    for (Index c = 0; c < k; ++c) w(r, c) = root_of_unity(r * c, k);
  return w;
}

RealSystem complex_to_real_embed(const ComplexMatrix& a, const ComplexVector& b) {
  if (a.rows() != b.size())
    throw DimensionMismatch("embed: matrix rows " + std::to_string(a.rows()) +
                            " != rhs length " + std::to_string(b.size()));
  const Index m = a.rows();
  RealSystem out{DenseMatrix(2 * m, a.cols()), DenseVector(2 * m)};
  out.matrix.topRows(m) = a.real();
  out.matrix.bottomRows(m) = a.imag();
  out.rhs.head(m) = b.real();
  out.rhs.tail(m) = b.imag();
  return out;
}

DftMeasurement build_dft_measurement(Index k, std::span<const Index> selected_rows) {
  if (k < 1) throw InvalidParameter("DFT size must be >= 1");
  const Index n = k * k;
  std::unordered_set<Index> seen;
  for (Index r : selected_rows) {
    if (r < 0 || r >= n)
      throw InvalidParameter("DFT row index " + std::to_string(r) + " outside [0, " +
                             std::to_string(n - 1) + "]");
    if (!seen.insert(r).second)
      throw InvalidParameter("duplicate DFT row index " + std::to_string(r));
  }

  const auto count = static_cast<Index>(selected_rows.size());
  ComplexMatrix rows(count, n);
  for (Index s = 0; s < count; ++s) {
    const Index freq = selected_rows[static_cast<std::size_t>(s)];
    const Index a = freq / k;
    const Index b = freq % k;
    // Column c * K + d of W (x) W is W[a, c] * W[b, d].
    for (Index c = 0; c < k; ++c)
      for (Index d = 0; d < k; ++d) rows(s, c * k + d) = root_of_unity(a * c + b * d, k);
  }

  DftMeasurement out;
  out.side = k;
  out.matrix = complex_to_real_embed(rows, ComplexVector::Zero(count)).matrix;
  out.rows.reserve(static_cast<std::size_t>(2 * count));
  for (Index r : selected_rows) out.rows.push_back({r, MeasurementRow::Part::kReal});
  for (Index r : selected_rows) out.rows.push_back({r, MeasurementRow::Part::kImag});
  return out;
}

DftMeasurement drop_redundant_rows(const DftMeasurement& measurement) {
  const Index k = measurement.side;
  auto conjugate = [k](Index freq) {
    const Index a = freq / k;
    const Index b = freq % k;
    return ((k - a) % k) * k + (k - b) % k;
  };

  // A frequency keeps both of its rows only if it is the first of its
  // conjugate pair to appear among the real rows.
  std::unordered_set<Index> kept;
  std::vector<Index> keep_rows;
  for (std::size_t i = 0; i < measurement.rows.size(); ++i) {
    const auto& row = measurement.rows[i];
    if (row.part != MeasurementRow::Part::kReal) continue;
    if (kept.contains(conjugate(row.frequency)) || kept.contains(row.frequency)) continue;
    kept.insert(row.frequency);
    keep_rows.push_back(static_cast<Index>(i));
  }
  for (std::size_t i = 0; i < measurement.rows.size(); ++i) {
    const auto& row = measurement.rows[i];
    if (row.part != MeasurementRow::Part::kImag) continue;
    if (conjugate(row.frequency) == row.frequency) continue;
    if (!kept.contains(row.frequency)) continue;
    keep_rows.push_back(static_cast<Index>(i));
  }

  DftMeasurement out;
  out.side = k;
  out.matrix.resize(static_cast<Index>(keep_rows.size()), measurement.matrix.cols());
  for (std::size_t i = 0; i < keep_rows.size(); ++i) {
    out.matrix.row(static_cast<Index>(i)) = measurement.matrix.row(keep_rows[i]);
    out.rows.push_back(measurement.rows[static_cast<std::size_t>(keep_rows[i])]);
  }
  return out;
}

DenseVector vectorize(const DenseMatrix& image) {
  return Eigen::Map<const DenseVector>(image.data(), image.size());
}

DenseMatrix unvectorize(const DenseVector& v, Index rows, Index cols) {
  if (v.size() != rows * cols) throw DimensionMismatch("unvectorize: size mismatch");
  return Eigen::Map<const DenseMatrix>(v.data(), rows, cols);
}

}  // namespace bcs
