#pragma once

// Closed-form spectrum of -div(r^{2 mu} grad) + c r^{2 mu - 2} on the unit
// ball with Dirichlet data: Bessel zeros give the eigenvalues and the
// Bessel series gives the radial eigenfunctions.

namespace muntz {

struct OracleEigen {
  int d = 2;
  double mu = 0.0;
  double c = 0.0;
  int n = 0;
  int m = 1;
  double nu_order = 0.0;
  double zero = 0.0;
  double lambda = 0.0;
};

/// sqrt(c + (n + d/2 - 1)^2 + mu (mu + d - 2)) / (1 - mu).
double analytic_order(int d, double mu, double c, int n);

/// ((1 - mu) j_{order, m})^2.
double analytic_eigenvalue(int d, double mu, double c, int n, int m);

OracleEigen oracle_eigen(int d, double mu, double c, int n, int m);

/// r^{1 - mu - d/2} J_order(sqrt(lambda) r^{1 - mu} / (1 - mu)), unnormalised.
double analytic_radial_eigenfunction(int d, double mu, double c, int n, double lambda, double r);

}  // namespace muntz
