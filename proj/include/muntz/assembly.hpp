#pragma once

// Per-harmonic-degree Galerkin matrices on the boundary-vanishing basis
// k = 1..K. Stored index i corresponds to radial degree k = i + 1.

#include <cstddef>
#include <string>
#include <string_view>

#include "muntz/execution.hpp"
#include "muntz/linalg.hpp"
#include "muntz/mbp.hpp"

namespace muntz {

enum class ProblemKind { degenerate, fractional };
enum class BasisVariant { full, half };

std::string_view to_string(ProblemKind kind) noexcept;
std::string_view to_string(BasisVariant basis) noexcept;
ProblemKind parse_problem_kind(std::string_view text);
BasisVariant parse_basis_variant(std::string_view text);

/// degenerate: -div(r^{2 mu} grad u) + c r^{2 mu - 2} u = lambda u
/// fractional: -Laplace u + c r^{-2} u + z r^{(2 nu - 2 eta)/(eta + 1)} u = lambda u
/// both with u = 0 on the unit sphere.
struct ProblemConfig {
  ProblemKind kind = ProblemKind::degenerate;
  int d = 2;
  double mu = 0.0;
  double c = 1.0;
  double z = 0.0;
  int eta = 0;
  int nu = 0;
  BasisVariant basis = BasisVariant::full;

  void validate() const;
  double theta() const;
  MbpSpec basis_spec() const;
};

struct RadialBlock {
  int n = 0;
  int K = 0;
  SymBanded stiffness;
  SymBanded mass;
  MbpSpec spec;
  ProblemKind kind = ProblemKind::degenerate;
  BasisVariant basis = BasisVariant::full;
};

/// Closed-form mass entry of the full basis (theta = 1 - mu, alpha = -1),
/// k, j >= 0 radial degrees.
double degenerate_mass_entry(double beta, double mu, int k, int j);

/// Sobolev-diagonal stiffness entry for radial degree k of the alpha = -1
/// basis: (grad S, grad S)_{r^{2 mu}} + c (S, S)_{r^{2 mu - 2}}.
double sobolev_stiffness_entry(const MbpSpec& spec, int n, int k);

SymBanded mass_matrix_degenerate(const ProblemConfig& cfg, int n, int K);
SymBanded stiffness_matrix_degenerate(const ProblemConfig& cfg, int n, int K);

/// Radial Gram matrix G_kj = int_0^1 R_k R_j r^{d-1+power} dr for k, j = 1..K
/// where power makes the rho-integrand a polynomial of extra degree
/// `extra` times the (0, beta_n) Jacobi weight; entries beyond
/// `half_bandwidth` are not computed.
SymBanded radial_gram(const MbpSpec& spec, int n, int K, int extra, std::size_t half_bandwidth,
                      Execution exec = Execution::parallel);

RadialBlock matrices_degenerate(const ProblemConfig& cfg, int n, int K);
RadialBlock matrices_degenerate_half_theta(const ProblemConfig& cfg, int n, int K,
                                           Execution exec = Execution::parallel);
RadialBlock matrices_fractional(const ProblemConfig& cfg, int n, int K,
                                Execution exec = Execution::parallel);

/// Dispatches on cfg.kind and cfg.basis.
RadialBlock assemble_block(const ProblemConfig& cfg, int n, int K, Execution exec = Execution::parallel);

}  // namespace muntz
