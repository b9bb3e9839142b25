#pragma once

// Müntz ball polynomials: the radial factor
//   R_k(r) = P_k^{(alpha, beta_n)}(2 r^{2 theta} - 1) * r^{theta beta_n + 1 - d/2 - mu},
// multiplied by a real spherical harmonic of degree n, plus the closed-form
// operator actions used for verification.

namespace muntz {

struct MbpSpec {
  double alpha = -1.0;  // > -1, or exactly -1 for the boundary-vanishing family
  double mu = 0.0;      // > -1/2
  double theta = 1.0;   // > 0
  double c = 0.0;       // >= 0
  int d = 2;            // >= 1

  /// Throws DomainError when a parameter is outside its range.
  void validate() const;
  bool boundary_vanishing() const noexcept { return alpha == -1.0; }
};

/// Müntz exponent driver sqrt(c + (n + d/2 - 1)^2 + mu (mu + d - 2)) / theta.
double beta_n(const MbpSpec& spec, int n);

/// Power of r multiplying the Jacobi factor: theta beta_n + 1 - d/2 - mu.
double radial_power(const MbpSpec& spec, int n);

/// Radial factor at r in [0, 1]; r = 0 takes the limit of the power factor.
double mbp_radial_eval(const MbpSpec& spec, int n, int k, double r);

struct RadialJet {
  double value = 0.0;
  double d1 = 0.0;  // d/dr
  double d2 = 0.0;  // d^2/dr^2
};

/// Value and first two r-derivatives at r in (0, 1].
RadialJet mbp_radial_jet(const MbpSpec& spec, int n, int k, double r);

/// Squared norm against |x|^{2 theta + 2 mu - 2} (1 - |x|^{2 theta})^alpha;
/// requires alpha > -1.
double mbp_norm_sq(const MbpSpec& spec, int n, int k);

double chi_eigenvalue(const MbpSpec& spec, int n, int k);

/// Radial part of the Sturm-Liouville operator applied to R_k at r in (0,1).
/// Equals chi_eigenvalue * r^{2 theta - 2} * R_k.
double apply_radial_sl_operator(const MbpSpec& spec, int n, int k, double r);

/// Radial part of -div(|x|^{2 mu} grad) + c |x|^{2 mu - 2} applied to R_k.
double apply_degenerate_operator(const MbpSpec& spec, int n, int k, double r);

/// Right side of the lowering identity for apply_degenerate_operator:
/// -4 theta^2 (k + beta)(k + alpha + beta + 1) r^{2 theta - 2 + 2 mu} R_{k-1}
/// with alpha raised by two (zero for k = 0).
double degenerate_lowering_rhs(const MbpSpec& spec, int n, int k, double r);

}  // namespace muntz
