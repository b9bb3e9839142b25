#pragma once

// Scalar special functions: log-Gamma, Jacobi polynomials with real
// parameters (including the generalised alpha = -1 family) and Bessel
// functions of the first kind of real order.

namespace muntz {

/// Jacobi exponents (alpha, beta). beta > -1 always; alpha > -1, or alpha
/// exactly -1 for the generalised family that vanishes at x = 1.
struct JacobiParams {
  double alpha = 0.0;
  double beta = 0.0;

  bool generalized() const noexcept { return alpha == -1.0; }
};

/// ln Gamma(x) for x > 0 (Lanczos, g = 7).
double gamma_ln(double x);

/// P_n^{(alpha,beta)}(x) by the three-term recurrence; requires alpha, beta > -1.
double jacobi_eval(int n, JacobiParams p, double x);

/// P_n^{(-1,beta)}(x) = ((n+beta)/n) ((x-1)/2) P_{n-1}^{(1,beta)}(x), P_0 = 1.
double jacobi_eval_m1(int n, double beta, double x);

/// Dispatches to jacobi_eval or jacobi_eval_m1 on p.alpha.
double jacobi_value(int n, JacobiParams p, double x);

/// d^order/dx^order P_n^{(alpha,beta)}(x), via the parameter-raising
/// derivative identity; valid on the alpha = -1 family as well.
double jacobi_deriv(int n, JacobiParams p, double x, int order = 1);

/// Sturm-Liouville eigenvalue n(n + alpha + beta + 1).
double jacobi_sl_eigenvalue(int n, JacobiParams p) noexcept;

/// Upper end of the argument window on which the Bessel series is trusted.
inline constexpr double kBesselWindow = 40.0;

/// J_nu(x) for nu >= 0, 0 <= x <= kBesselWindow. The power series is summed
/// in double-double arithmetic so the cancellation near the top of the
/// window does not reach the 1e-12 absolute level.
double bessel_j(double nu, double x);

/// d/dx J_nu(x) from the term-wise differentiated series; x > 0.
double bessel_j_deriv(double nu, double x);

/// m-th positive zero (m >= 1) of J_nu. Throws WindowExceeded if the zero
/// lies beyond kBesselWindow.
double bessel_j_zero(double nu, int m);

}  // namespace muntz
