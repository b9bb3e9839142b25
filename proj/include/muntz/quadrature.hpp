#pragma once

#include <vector>

#include "muntz/mbp.hpp"

namespace muntz {

/// Gauss rule for the weight (1 - x)^alpha (1 + x)^beta on (-1, 1).
struct QuadratureRule {
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<double> nodes;    // strictly increasing
  std::vector<double> weights;  // positive

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Golub-Welsch construction; exact for polynomials of degree <= 2n - 1.
QuadratureRule gauss_jacobi(int n, double alpha, double beta);

/// Zeroth moment 2^{alpha+beta+1} B(alpha+1, beta+1).
double jacobi_weight_mass(double alpha, double beta);

template <class F>
double integrate(const QuadratureRule& rule, F&& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(rule.nodes[i]);
  return sum;
}

/// Rule in rho = 2 r^{2 theta} - 1 with parameters (alpha or 0, beta_n),
/// exact for radial integrands of total polynomial degree <= 2K + extra_degree.
QuadratureRule radial_rule(const MbpSpec& spec, int n, int K, int extra_degree);

}  // namespace muntz
