#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "muntz/assembly.hpp"
#include "muntz/execution.hpp"
#include "muntz/mbp.hpp"

namespace muntz {

struct EigenResult {
  double lambda = 0.0;
  int n = 0;
  int radial_rank = 1;           // 1-based among eigenvalues with the same n
  std::int64_t multiplicity = 1;  // harmonic_dim(n, d)
  std::vector<double> coeffs;    // against R_1..R_K
  MbpSpec spec;
  /// False for the upper half of the Ritz values of a block, which are
  /// typically far from converged.
  bool trusted = true;
};

struct SpectrumRequest {
  ProblemConfig cfg;
  int N = 0;
  int K = 20;
  int count = 1;

  void validate() const;
};

/// All K pencil pairs of a block, ascending, with unit-mass coefficients.
std::vector<EigenResult> solve_radial(const RadialBlock& block);

/// The `count` smallest eigenvalues over n = 0..N ordered by (lambda, n, rank).
std::vector<EigenResult> solve_spectrum(const SpectrumRequest& req, Execution exec = Execution::parallel);
std::vector<EigenResult> solve_spectrum_serial(const SpectrumRequest& req);

/// Rescales to coeffs^T M coeffs = 1 with a positive first nonzero coefficient.
EigenResult normalize(EigenResult result, const SymBanded& mass);

/// int_0^1 u(r)^2 r^{d - 1 + weight_power} dr for the radial part u, by a
/// Gauss-Jacobi rule that absorbs every power of (1 + rho).
double radial_norm_sq(const EigenResult& result, double weight_power);

/// ||S u - lambda M u||_inf for a result of `block`.
double galerkin_residual(const RadialBlock& block, const EigenResult& result);

std::vector<double> eigenfunction_radial_eval(const EigenResult& result, std::span<const double> r);

/// Values at points of the closed unit ball given as a flat array of
/// d-dimensional coordinates; d in {1, 2, 3}.
std::vector<double> eigenfunction_eval(const EigenResult& result, int ell, std::span<const double> points);

}  // namespace muntz
