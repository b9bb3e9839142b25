#include "muntz/oracle.hpp"

#include <cmath>
#include <string>

#include "muntz/errors.hpp"
#include "muntz/specfun.hpp"

namespace muntz {

namespace {

void check(int d, double mu, int n) {
  if (d < 1) throw DomainError("oracle: d must be >= 1");
  if (n < 0) throw DomainError("oracle: n must be >= 0");
  if (!(mu > -0.5 && mu < 1.0)) throw DomainError("oracle: requires -1/2 < mu < 1");
}

}  // namespace

double analytic_order(int d, double mu, double c, int n) {
  check(d, mu, n);
  const double h = n + d / 2.0 - 1.0;
  const double radicand = c + h * h + mu * (mu + d - 2.0);
  if (radicand < 0.0) throw DomainError("analytic_order: negative radicand");
  return std::sqrt(radicand) / (1.0 - mu);
}

double analytic_eigenvalue(int d, double mu, double c, int n, int m) {
  return oracle_eigen(d, mu, c, n, m).lambda;
}

OracleEigen oracle_eigen(int d, double mu, double c, int n, int m) {
  OracleEigen out;
  out.d = d;
  out.mu = mu;
  out.c = c;
  out.n = n;
  out.m = m;
  out.nu_order = analytic_order(d, mu, c, n);
  out.zero = bessel_j_zero(out.nu_order, m);
  const double root = (1.0 - mu) * out.zero;
  out.lambda = root * root;
  return out;
}

double analytic_radial_eigenfunction(int d, double mu, double c, int n, double lambda, double r) {
  if (!(r > 0.0 && r <= 1.0)) throw DomainError("analytic_radial_eigenfunction: r must lie in (0, 1]");
  if (!(lambda > 0.0)) throw DomainError("analytic_radial_eigenfunction: lambda must be positive");
  const double order = analytic_order(d, mu, c, n);
  const double arg = std::sqrt(lambda) * std::pow(r, 1.0 - mu) / (1.0 - mu);
  return std::pow(r, 1.0 - mu - d / 2.0) * bessel_j(order, arg);
}

}  // namespace muntz
