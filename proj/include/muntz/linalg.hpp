#pragma once

// Small dense and banded symmetric linear algebra: an implicit-shift QL
// eigensolver for symmetric tridiagonal matrices, Householder reduction of
// dense symmetric matrices, banded Cholesky, and the symmetric-definite
// generalized eigenproblem S u = lambda M u.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace muntz {

/// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<double> column(std::size_t j) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct SymTridiag {
  std::vector<double> diag;
  std::vector<double> offdiag;  // length diag.size() - 1
};

/// Symmetric banded matrix in lower-triangle band storage:
/// band(d)[i] holds A(i + d, i) for d = 0..half_bandwidth. Entries outside
/// the band are zero by construction and cannot be written.
class SymBanded {
 public:
  SymBanded() = default;
  SymBanded(std::size_t dim, std::size_t half_bandwidth);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t half_bandwidth() const noexcept { return half_bandwidth_; }

  double operator()(std::size_t i, std::size_t j) const;
  /// Sets A(i,j) = A(j,i) = value; throws DomainError outside the band.
  void set(std::size_t i, std::size_t j, double value);

  std::span<const double> band(std::size_t d) const { return bands_.at(d); }
  const std::vector<std::vector<double>>& bands() const noexcept { return bands_; }
  /// Builds from explicit band storage (as produced by bands()).
  static SymBanded from_bands(std::vector<std::vector<double>> bands, std::size_t half_bandwidth);

  Matrix to_dense() const;
  std::vector<double> multiply(std::span<const double> x) const;
  /// Max absolute row sum.
  double norm_inf() const;

 private:
  std::size_t dim_ = 0;
  std::size_t half_bandwidth_ = 0;
  std::vector<std::vector<double>> bands_;
};

/// a * A + b * B with the larger of the two bandwidths.
SymBanded combine(double a, const SymBanded& A, double b, const SymBanded& B);

struct EigenDecomposition {
  std::vector<double> values;     // ascending
  std::optional<Matrix> vectors;  // column j pairs with values[j]
};

/// Implicit-shift QL on a symmetric tridiagonal matrix.
EigenDecomposition symtri_eig(const SymTridiag& T, bool want_vectors);

/// Householder tridiagonalisation followed by symtri_eig.
EigenDecomposition sym_eig_dense(const Matrix& A, bool want_vectors);

/// Lower Cholesky factor with the same half-bandwidth; throws
/// NotPositiveDefinite naming the failing pivot.
SymBanded cholesky_banded(const SymBanded& M);

/// Solves L y = b / L^T x = y for a banded lower factor.
std::vector<double> forward_substitute(const SymBanded& L, std::span<const double> b);
std::vector<double> back_substitute(const SymBanded& L, std::span<const double> y);

/// S u = lambda M u by Cholesky reduction on M: C = L^{-1} S L^{-T}.
/// Vectors are M-orthonormal. S may be indefinite.
EigenDecomposition generalized_sym_eig(const SymBanded& S, const SymBanded& M, bool want_vectors);

/// S u = lambda M u by reduction on the shifted stiffness A = S + shift M,
/// which must be positive definite: the standard problem
/// L^{-1} M L^{-T} y = y / (lambda + shift) is solved after symmetric
/// diagonal equilibration of A. The smallest pencil eigenvalues become the
/// dominant ones of the reduced matrix, so they keep full relative accuracy
/// even when M is badly conditioned. Vectors are M-orthonormal.
EigenDecomposition generalized_sym_eig_shifted(const SymBanded& S, const SymBanded& M,
                                               double shift, bool want_vectors);

}  // namespace muntz
