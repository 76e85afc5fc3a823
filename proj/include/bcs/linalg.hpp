#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace bcs {

using Index = Eigen::Index;
using DenseMatrix = Eigen::MatrixXd;
using DenseVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// The all-ones vector of length n.
DenseVector ones(Index n);

// m x n matrix of i.i.d. N(0, 1) entries, filled row by row from Rng(seed).
DenseMatrix sample_gaussian_matrix(Index m, Index n, std::uint64_t seed);

// Vector in {0,1}^n with P(entry = 1) = p; throws InvalidParameter for p
// outside [0, 1].
DenseVector sample_binary_signal(Index n, double p, std::uint64_t seed);

// `count` distinct indices from [0, population), in draw order.
std::vector<Index> sample_without_replacement(Index population, Index count,
                                              std::uint64_t seed);

// Cholesky factorization of the Gram matrix G = Phi Phi^T. Applies G^{-1}
// to vectors without ever forming the inverse.
// Throws SingularMatrix when a squared Cholesky pivot falls below
// 1e-12 * max diag(G).
class GramFactorization {
 public:
  explicit GramFactorization(DenseMatrix phi);

  const DenseMatrix& phi() const { return phi_; }
  Index rows() const { return phi_.rows(); }
  Index cols() const { return phi_.cols(); }

  // (Phi Phi^T)^{-1} v.
  DenseVector solve(const DenseVector& v) const;

 private:
  DenseMatrix phi_;
  Eigen::LLT<DenseMatrix> llt_;
};

GramFactorization gram_factorize(const DenseMatrix& phi);

// Phi^T (Phi Phi^T)^{-1} y.
DenseVector min_norm_solution(const GramFactorization& fac, const DenseVector& y);

// z - Phi^T (Phi Phi^T)^{-1} (Phi z - y): the orthogonal projection of z onto
// {z : Phi z = y}.
DenseVector affine_project(const GramFactorization& fac, const DenseVector& y,
                           const DenseVector& z);
// In-place variant used by the inner loops of the iterative solvers.
void affine_project_inplace(const GramFactorization& fac, const DenseVector& y,
                            DenseVector& z);

// Phi 1_N - y: measurements of the complementary signal 1_N - x.
DenseVector complement_transform(const DenseMatrix& phi, const DenseVector& y);

// K-point DFT matrix, W[k, l] = exp(-2 pi i k l / K).
ComplexMatrix dft_matrix(Index k);

struct RealSystem {
  DenseMatrix matrix;
  DenseVector rhs;
};

// Stacks real and imaginary parts: [Re A; Im A] z = [Re b; Im b]. For real z
// this system is equivalent to A z = b.
RealSystem complex_to_real_embed(const ComplexMatrix& a, const ComplexVector& b);

// Provenance of one row of a real-embedded DFT measurement matrix.
struct MeasurementRow {
  enum class Part { kReal, kImag };
  Index frequency;  // row index into W (x) W, i.e. a * K + b
  Part part;
};

// Real-embedded rows of the 2-D DFT W (x) W, acting on column-major vec(X) of
// a K x K image.
struct DftMeasurement {
  Index side = 0;
  DenseMatrix matrix;
  std::vector<MeasurementRow> rows;
};

// Builds the |selected| x K^2 complex submatrix of W (x) W and real-embeds it,
// giving a 2|selected| x K^2 matrix: all real parts first, then all imaginary
// parts, each in selection order. Throws InvalidParameter on duplicate or
// out-of-range indices.
DftMeasurement build_dft_measurement(Index k, std::span<const Index> selected_rows);

// Removes rows that carry no new information: imaginary parts of
// self-conjugate frequencies (identically zero) and both rows of any frequency
// whose conjugate partner was already kept. The remaining rows are mutually
// orthogonal and the solution set {z real : matrix z = y} is unchanged for any
// y produced from a real image.
DftMeasurement drop_redundant_rows(const DftMeasurement& measurement);

// Column-major vectorization of a K x K image, matching the Kronecker column
// order used by build_dft_measurement.
DenseVector vectorize(const DenseMatrix& image);
DenseMatrix unvectorize(const DenseVector& v, Index rows, Index cols);

}  // namespace bcs
