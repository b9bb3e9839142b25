#include "muntz/quadrature.hpp"

#include <cmath>
#include <string>

#include "muntz/errors.hpp"
#include "muntz/linalg.hpp"
#include "muntz/specfun.hpp"

namespace muntz {

double jacobi_weight_mass(double alpha, double beta) {
  return std::exp((alpha + beta + 1.0) * std::log(2.0) + gamma_ln(alpha + 1.0) + gamma_ln(beta + 1.0) -
                  gamma_ln(alpha + beta + 2.0));
}

QuadratureRule gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1) throw DomainError("gauss_jacobi: node count must be >= 1, got " + std::to_string(n));
  if (!(alpha > -1.0) || !(beta > -1.0)) throw DomainError("gauss_jacobi: exponents must be > -1");
  const double a = alpha;
  const double b = beta;
  SymTridiag T;
  T.diag.resize(n);
  T.offdiag.resize(n - 1);
  T.diag[0] = (b - a) / (a + b + 2.0);
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    T.diag[k] = (b * b - a * a) / (s * (s + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    if (k == 1) {
      T.offdiag[0] = std::sqrt(4.0 * (1.0 + a) * (1.0 + b) / ((a + b + 2.0) * (a + b + 2.0) * (a + b + 3.0)));
    } else {
      T.offdiag[k - 1] =
          std::sqrt(4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0)));
    }
  }
  const EigenDecomposition eig = symtri_eig(T, true);
  const double mass = jacobi_weight_mass(a, b);
  QuadratureRule rule{a, b, eig.values, std::vector<double>(n)};
  for (int i = 0; i < n; ++i) {
    const double v0 = (*eig.vectors)(0, i);
    rule.weights[i] = mass * v0 * v0;
  }
  return rule;
}

QuadratureRule radial_rule(const MbpSpec& spec, int n, int K, int extra_degree) {
  if (K < 0 || extra_degree < 0) throw DomainError("radial_rule: degrees must be >= 0");
  const int degree = 2 * K + extra_degree;
  const int nodes = (degree + 2) / 2 + 2;
  const double a = spec.alpha > -1.0 ? spec.alpha : 0.0;
  return gauss_jacobi(nodes, a, beta_n(spec, n));
}

}  // namespace muntz
