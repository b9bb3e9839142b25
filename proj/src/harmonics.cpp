#include "muntz/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "muntz/errors.hpp"
#include "muntz/specfun.hpp"

namespace muntz {

namespace {

std::int64_t binomial(std::int64_t top, std::int64_t k) {
  if (k < 0 || top < 0 || k > top) return 0;
  k = std::min(k, top - k);
  std::int64_t result = 1;
  for (std::int64_t i = 1; i <= k; ++i) result = result * (top - k + i) / i;
  return result;
}

// Normalised associated Legendre function times sqrt of the sphere measure:
// sqrt((2n+1)/(4 pi) (n-m)!/(n+m)!) P_n^m(x), no Condon-Shortley phase.
double normalized_legendre(int n, int m, double x) {
  const double sx = std::sqrt(std::max(0.0, 1.0 - x * x));
  // Start from the diagonal in normalised form to avoid factorial growth.
  double pmm = std::sqrt(1.0 / (4.0 * std::numbers::pi));
  for (int i = 1; i <= m; ++i) pmm *= std::sqrt((2.0 * i + 1.0) / (2.0 * i)) * sx;
  if (n == m) return pmm;
  double pm1 = std::sqrt(2.0 * m + 3.0) * x * pmm;
  if (n == m + 1) return pm1;
  double pm2 = pmm;
  for (int l = m + 2; l <= n; ++l) {
    const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(m) * m));
    const double b = std::sqrt(((l - 1.0) * (l - 1.0) - static_cast<double>(m) * m) / (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
    const double pl = a * (x * pm1 - b * pm2);
    pm2 = pm1;
    pm1 = pl;
  }
  return pm1;
}

}  // namespace

void HarmonicIndex::validate() const {
  if (d < 1) throw DomainError("harmonic index: d must be >= 1");
  if (n < 0) throw DomainError("harmonic index: n must be >= 0");
  const std::int64_t dim = harmonic_dim(n, d);
  if (ell < 1 || ell > dim) {
    throw DomainError("harmonic index: ell = " + std::to_string(ell) + " outside 1.." + std::to_string(dim));
  }
}

std::int64_t harmonic_dim(int n, int d) {
  if (n < 0 || d < 1) throw DomainError("harmonic_dim: requires n >= 0 and d >= 1");
  if (d == 1) return n <= 1 ? 1 : 0;
  return binomial(n + d - 1, n) - binomial(n + d - 3, n - 2);
}

double laplace_beltrami_eig(int n, int d) { return -static_cast<double>(n) * (n + d - 2); }

double harmonic_eval(const HarmonicIndex& idx, std::span<const double> direction) {
  if (idx.d >= 4) throw DomainError("harmonic_eval: unsupported dimension " + std::to_string(idx.d));
  idx.validate();
  if (direction.size() != static_cast<std::size_t>(idx.d)) {
    throw DomainError("harmonic_eval: direction has the wrong number of components");
  }
  double norm2 = 0.0;
  for (double v : direction) norm2 += v * v;
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12) throw DomainError("harmonic_eval: direction is not a unit vector");

  const int n = idx.n;
  if (idx.d == 1) return (n == 0 ? 1.0 : direction[0]) / std::numbers::sqrt2;
  if (idx.d == 2) {
    const double phi = std::atan2(direction[1], direction[0]);
    if (n == 0) return 1.0 / std::sqrt(2.0 * std::numbers::pi);
    const double scale = 1.0 / std::sqrt(std::numbers::pi);
    return scale * (idx.ell == 1 ? std::cos(n * phi) : std::sin(n * phi));
  }
  const double ct = std::clamp(direction[2], -1.0, 1.0);
  const double phi = std::atan2(direction[1], direction[0]);
  if (idx.ell == 1) return normalized_legendre(n, 0, ct);
  const int m = idx.ell / 2;
  const double base = std::numbers::sqrt2 * normalized_legendre(n, m, ct);
  return base * (idx.ell % 2 == 0 ? std::cos(m * phi) : std::sin(m * phi));
}

}  // namespace muntz
