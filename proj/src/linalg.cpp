#include "muntz/linalg.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numeric>
#include <string>

#include "muntz/errors.hpp"

namespace muntz {

Matrix Matrix::identity(std::size_t n) {
  Matrix I(n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = 1.0;
  return I;
}

std::vector<double> Matrix::column(std::size_t j) const {
  std::vector<double> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

SymBanded::SymBanded(std::size_t dim, std::size_t half_bandwidth)
    : dim_(dim), half_bandwidth_(half_bandwidth) {
  const std::size_t stored = dim == 0 ? 0 : std::min(half_bandwidth, dim - 1) + 1;
  bands_.resize(stored);
  for (std::size_t d = 0; d < stored; ++d) bands_[d].assign(dim - d, 0.0);
}

double SymBanded::operator()(std::size_t i, std::size_t j) const {
  if (i < j) std::swap(i, j);
  const std::size_t d = i - j;
  if (d >= bands_.size()) return 0.0;
  return bands_[d][j];
}

void SymBanded::set(std::size_t i, std::size_t j, double value) {
  if (i < j) std::swap(i, j);
  const std::size_t d = i - j;
  if (i >= dim_ || d > half_bandwidth_ || d >= bands_.size()) {
    throw DomainError("SymBanded::set: entry (" + std::to_string(i) + "," + std::to_string(j) +
                      ") outside half-bandwidth " + std::to_string(half_bandwidth_));
  }
  bands_[d][j] = value;
}

SymBanded SymBanded::from_bands(std::vector<std::vector<double>> bands, std::size_t half_bandwidth) {
  if (bands.empty()) throw DomainError("SymBanded::from_bands: no bands");
  const std::size_t dim = bands[0].size();
  SymBanded A(dim, half_bandwidth);
  if (A.bands_.size() != bands.size()) throw DomainError("SymBanded::from_bands: band count disagrees with half-bandwidth");
  for (std::size_t d = 0; d < bands.size(); ++d) {
    if (bands[d].size() + d != dim) throw DomainError("SymBanded::from_bands: ragged band storage");
  }
  A.bands_ = std::move(bands);
  return A;
}

Matrix SymBanded::to_dense() const {
  Matrix A(dim_, dim_);
  for (std::size_t d = 0; d < bands_.size(); ++d) {
    for (std::size_t j = 0; j + d < dim_; ++j) {
      A(j + d, j) = bands_[d][j];
      A(j, j + d) = bands_[d][j];
    }
  }
  return A;
}

std::vector<double> SymBanded::multiply(std::span<const double> x) const {
  std::vector<double> y(dim_, 0.0);
  for (std::size_t j = 0; j < dim_; ++j) y[j] += bands_[0][j] * x[j];
  for (std::size_t d = 1; d < bands_.size(); ++d) {
    for (std::size_t j = 0; j + d < dim_; ++j) {
      y[j + d] += bands_[d][j] * x[j];
      y[j] += bands_[d][j] * x[j + d];
    }
  }
  return y;
}

double SymBanded::norm_inf() const {
  double best = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    double s = 0.0;
    const std::size_t lo = i >= half_bandwidth_ ? i - half_bandwidth_ : 0;
    const std::size_t hi = std::min(dim_ - 1, i + half_bandwidth_);
    for (std::size_t j = lo; j <= hi; ++j) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

SymBanded combine(double a, const SymBanded& A, double b, const SymBanded& B) {
  if (A.dim() != B.dim()) throw DomainError("combine: dimension mismatch");
  const std::size_t bw = std::max(A.half_bandwidth(), B.half_bandwidth());
  SymBanded C(A.dim(), bw);
  for (std::size_t d = 0; d < C.bands().size(); ++d) {
    for (std::size_t j = 0; j + d < A.dim(); ++j) C.set(j + d, j, a * A(j + d, j) + b * B(j + d, j));
  }
  return C;
}

namespace {

// Implicit QL with Wilkinson-type shifts on diag d and off-diagonal e
// (e[i] couples i and i+1, e.size() == d.size()). Rotations are accumulated
// into the columns of z when given.
void implicit_ql(std::vector<double>& d, std::vector<double>& e, Matrix* z) {
  const int n = static_cast<int>(d.size());
  if (n == 0) return;
  e[n - 1] = 0.0;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m != l) {
        if (iter++ == 60) throw NumericalError("symtri_eig: QL iteration did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        int i = m - 1;
        for (; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (z != nullptr) {
            for (std::size_t k = 0; k < z->rows(); ++k) {
              f = (*z)(k, i + 1);
              (*z)(k, i + 1) = s * (*z)(k, i) + c * f;
              (*z)(k, i) = c * (*z)(k, i) - s * f;
            }
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

EigenDecomposition sorted(std::vector<double> values, std::optional<Matrix> vectors) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  EigenDecomposition out;
  out.values.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.values[j] = values[order[j]];
  if (vectors) {
    Matrix v(vectors->rows(), n);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < vectors->rows(); ++i) v(i, j) = (*vectors)(i, order[j]);
    }
    out.vectors = std::move(v);
  }
  return out;
}

// Householder reduction A = Q T Q^T; returns T and overwrites q with Q.
SymTridiag householder_tridiagonalize(Matrix A, Matrix* q) {
  const std::size_t n = A.rows();
  std::vector<double> v(n), p(n), w(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double norm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) norm = std::hypot(norm, A(i, k));
    if (norm == 0.0) continue;
    const double alpha = A(k + 1, k) > 0.0 ? -norm : norm;
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i] = A(i, k);
      if (i == k + 1) v[i] -= alpha;
      vnorm2 += v[i] * v[i];
    }
    if (vnorm2 == 0.0) continue;
    const double vinv = 1.0 / std::sqrt(vnorm2);
    for (std::size_t i = k + 1; i < n; ++i) v[i] *= vinv;
    // H = I - 2 v v^T applied on both sides of the trailing block.
    double kappa = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) s += A(i, j) * v[j];
      p[i] = s;
      kappa += v[i] * s;
    }
    for (std::size_t i = k + 1; i < n; ++i) w[i] = 2.0 * (p[i] - kappa * v[i]);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) A(i, j) -= v[i] * w[j] + w[i] * v[j];
    }
    A(k + 1, k) = alpha;
    A(k, k + 1) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) {
      A(i, k) = 0.0;
      A(k, i) = 0.0;
    }
    if (q != nullptr) {
      for (std::size_t r = 0; r < n; ++r) {
        double s = 0.0;
        for (std::size_t j = k + 1; j < n; ++j) s += (*q)(r, j) * v[j];
        s *= 2.0;
        for (std::size_t j = k + 1; j < n; ++j) (*q)(r, j) -= s * v[j];
      }
    }
  }
  SymTridiag T;
  T.diag.resize(n);
  T.offdiag.resize(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) T.diag[i] = A(i, i);
  for (std::size_t i = 0; i + 1 < n; ++i) T.offdiag[i] = A(i + 1, i);
  return T;
}

// Dense C = L^{-1} X L^{-T} for symmetric X given as a column generator.
Matrix congruence_inverse(const SymBanded& L, const Matrix& X) {
  const std::size_t n = L.dim();
  Matrix W(n, n);  // W = L^{-1} X, column by column
  for (std::size_t j = 0; j < n; ++j) {
    const std::vector<double> col = forward_substitute(L, X.column(j));
    for (std::size_t i = 0; i < n; ++i) W(i, j) = col[i];
  }
  Matrix C(n, n);  // C = L^{-1} W^T
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> rowj(W.row(j).begin(), W.row(j).end());
    const std::vector<double> col = forward_substitute(L, rowj);
    for (std::size_t i = 0; i < n; ++i) C(i, j) = col[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double avg = 0.5 * (C(i, j) + C(j, i));
      C(i, j) = avg;
      C(j, i) = avg;
    }
  }
  return C;
}

void check_pencil(const SymBanded& S, const SymBanded& M) {
  if (S.dim() != M.dim()) throw DomainError("generalized eigenproblem: dimension mismatch");
  if (S.dim() == 0) throw DomainError("generalized eigenproblem: empty pencil");
}

}  // namespace

EigenDecomposition symtri_eig(const SymTridiag& T, bool want_vectors) {
  const std::size_t n = T.diag.size();
  if (n == 0) throw DomainError("symtri_eig: empty matrix");
  if (T.offdiag.size() + 1 != n) throw DomainError("symtri_eig: off-diagonal length must be m - 1");
  std::vector<double> d = T.diag;
  std::vector<double> e(n, 0.0);
  std::copy(T.offdiag.begin(), T.offdiag.end(), e.begin());
  std::optional<Matrix> z;
  if (want_vectors) z = Matrix::identity(n);
  implicit_ql(d, e, z ? &*z : nullptr);
  return sorted(std::move(d), std::move(z));
}

EigenDecomposition sym_eig_dense(const Matrix& A, bool want_vectors) {
  const std::size_t n = A.rows();
  if (n == 0 || A.cols() != n) throw DomainError("sym_eig_dense: matrix must be square and non-empty");
  std::optional<Matrix> q;
  if (want_vectors) q = Matrix::identity(n);
  SymTridiag T = householder_tridiagonalize(A, q ? &*q : nullptr);
  std::vector<double> d = std::move(T.diag);
  std::vector<double> e(n, 0.0);
  std::copy(T.offdiag.begin(), T.offdiag.end(), e.begin());
  implicit_ql(d, e, q ? &*q : nullptr);
  return sorted(std::move(d), std::move(q));
}

SymBanded cholesky_banded(const SymBanded& M) {
  const std::size_t n = M.dim();
  const std::size_t b = std::min(M.half_bandwidth(), n == 0 ? 0 : n - 1);
  SymBanded L(n, b);
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = M(j, j);
    const std::size_t k0 = j >= b ? j - b : 0;
    for (std::size_t k = k0; k < j; ++k) pivot -= L(j, k) * L(j, k);
    if (!(pivot > 0.0)) throw NotPositiveDefinite(j, pivot);
    const double ljj = std::sqrt(pivot);
    L.set(j, j, ljj);
    for (std::size_t i = j + 1; i <= std::min(n - 1, j + b); ++i) {
      double s = M(i, j);
      const std::size_t kk = i >= b ? i - b : 0;
      for (std::size_t k = std::max(k0, kk); k < j; ++k) s -= L(i, k) * L(j, k);
      L.set(i, j, s / ljj);
    }
  }
  return L;
}

std::vector<double> forward_substitute(const SymBanded& L, std::span<const double> b) {
  const std::size_t n = L.dim();
  const std::size_t bw = L.half_bandwidth();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t j = i >= bw ? i - bw : 0; j < i; ++j) s -= L(i, j) * y[j];
    y[i] = s / L(i, i);
  }
  return y;
}

std::vector<double> back_substitute(const SymBanded& L, std::span<const double> y) {
  const std::size_t n = L.dim();
  const std::size_t bw = L.half_bandwidth();
  std::vector<double> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t j = ii + 1; j <= std::min(n - 1, ii + bw); ++j) s -= L(j, ii) * x[j];
    x[ii] = s / L(ii, ii);
  }
  return x;
}

EigenDecomposition generalized_sym_eig(const SymBanded& S, const SymBanded& M, bool want_vectors) {
  check_pencil(S, M);
  const SymBanded L = cholesky_banded(M);
  EigenDecomposition reduced = sym_eig_dense(congruence_inverse(L, S.to_dense()), want_vectors);
  if (!want_vectors) return reduced;
  const std::size_t n = S.dim();
  Matrix& V = *reduced.vectors;
  for (std::size_t j = 0; j < n; ++j) {
    const std::vector<double> x = back_substitute(L, V.column(j));
    for (std::size_t i = 0; i < n; ++i) V(i, j) = x[i];
  }
  return reduced;
}

EigenDecomposition generalized_sym_eig_shifted(const SymBanded& S, const SymBanded& M,
                                               double shift, bool want_vectors) {
  check_pencil(S, M);
  const std::size_t n = S.dim();
  SymBanded A = combine(1.0, S, shift, M);
  std::vector<double> scale(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(A(i, i) > 0.0)) throw NotPositiveDefinite(i, A(i, i));
    scale[i] = 1.0 / std::sqrt(A(i, i));
  }
  SymBanded Ms(n, M.half_bandwidth());
  for (std::size_t d = 0; d < A.bands().size(); ++d) {
    for (std::size_t j = 0; j + d < n; ++j) A.set(j + d, j, A(j + d, j) * scale[j + d] * scale[j]);
  }
  for (std::size_t d = 0; d < Ms.bands().size(); ++d) {
    for (std::size_t j = 0; j + d < n; ++j) Ms.set(j + d, j, M(j + d, j) * scale[j + d] * scale[j]);
  }
  const SymBanded L = cholesky_banded(A);
  EigenDecomposition reduced = sym_eig_dense(congruence_inverse(L, Ms.to_dense()), want_vectors);

  // omega = 1 / (lambda + shift); descending omega is ascending lambda.
  EigenDecomposition out;
  out.values.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double omega = reduced.values[n - 1 - j];
    if (!(omega > 0.0)) throw NumericalError("generalized_sym_eig_shifted: non-positive reduced eigenvalue");
    out.values[j] = 1.0 / omega - shift;
  }
  if (want_vectors) {
    Matrix V(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t src = n - 1 - j;
      const double omega = reduced.values[src];
      std::vector<double> x = back_substitute(L, reduced.vectors->column(src));
      const double norm = 1.0 / std::sqrt(omega);
      for (std::size_t i = 0; i < n; ++i) V(i, j) = x[i] * scale[i] * norm;
    }
    out.vectors = std::move(V);
  }
  return out;
}

}  // namespace muntz
