#include "muntz/mbp.hpp"

#include <cmath>
#include <string>

#include "muntz/errors.hpp"
#include "muntz/specfun.hpp"

namespace muntz {

namespace {

void check_degree(int n, int k) {
  if (n < 0) throw DomainError("harmonic degree must be >= 0, got " + std::to_string(n));
  if (k < 0) throw DomainError("radial degree must be >= 0, got " + std::to_string(k));
}

void check_interior(double r, const char* who) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError(std::string(who) + ": r must lie in (0, 1)");
}

}  // namespace

void MbpSpec::validate() const {
  if (!(alpha > -1.0) && alpha != -1.0) throw DomainError("alpha must be > -1 or exactly -1");
  if (!(mu > -0.5)) throw DomainError("mu must be > -1/2");
  if (!(theta > 0.0)) throw DomainError("theta must be > 0");
  if (!(c >= 0.0)) throw DomainError("c must be >= 0");
  if (d < 1) throw DomainError("dimension d must be >= 1");
  const double h = d / 2.0 - 1.0;
  if (c + h * h + mu * (mu + d - 2.0) < 0.0) throw DomainError("beta_0 radicand is negative");
}

double beta_n(const MbpSpec& spec, int n) {
  if (n < 0) throw DomainError("beta_n: harmonic degree must be >= 0");
  const double h = n + spec.d / 2.0 - 1.0;
  const double radicand = spec.c + h * h + spec.mu * (spec.mu + spec.d - 2.0);
  if (radicand < 0.0) throw DomainError("beta_n: negative radicand " + std::to_string(radicand));
  return std::sqrt(radicand) / spec.theta;
}

double radial_power(const MbpSpec& spec, int n) {
  return spec.theta * beta_n(spec, n) + 1.0 - spec.d / 2.0 - spec.mu;
}

double mbp_radial_eval(const MbpSpec& spec, int n, int k, double r) {
  check_degree(n, k);
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("mbp_radial_eval: r must lie in [0, 1]");
  const double beta = beta_n(spec, n);
  const double e = spec.theta * beta + 1.0 - spec.d / 2.0 - spec.mu;
  const JacobiParams p{spec.alpha, beta};
  if (r == 0.0) {
    if (e < 0.0) throw DomainError("mbp_radial_eval: basis diverges at the origin");
    return e > 0.0 ? 0.0 : jacobi_value(k, p, -1.0);
  }
  const double rho = 2.0 * std::pow(r, 2.0 * spec.theta) - 1.0;
  return jacobi_value(k, p, rho) * std::pow(r, e);
}

RadialJet mbp_radial_jet(const MbpSpec& spec, int n, int k, double r) {
  check_degree(n, k);
  if (!(r > 0.0 && r <= 1.0)) throw DomainError("mbp_radial_jet: r must lie in (0, 1]");
  const double beta = beta_n(spec, n);
  const double th = spec.theta;
  const double e = th * beta + 1.0 - spec.d / 2.0 - spec.mu;
  const JacobiParams p{spec.alpha, beta};
  const double s = std::pow(r, 2.0 * th);
  const double rho = 2.0 * s - 1.0;
  const double P = jacobi_value(k, p, rho);
  const double P1 = jacobi_deriv(k, p, rho, 1);
  const double P2 = jacobi_deriv(k, p, rho, 2);
  const double drho = 4.0 * th * s / r;
  const double d2rho = 4.0 * th * (2.0 * th - 1.0) * s / (r * r);
  const double re = std::pow(r, e);
  RadialJet jet;
  jet.value = re * P;
  jet.d1 = re * (e / r * P + P1 * drho);
  jet.d2 = re * (e * (e - 1.0) / (r * r) * P + 2.0 * e / r * P1 * drho + P2 * drho * drho + P1 * d2rho);
  return jet;
}

double mbp_norm_sq(const MbpSpec& spec, int n, int k) {
  check_degree(n, k);
  if (!(spec.alpha > -1.0)) throw DomainError("mbp_norm_sq: requires alpha > -1");
  const double a = spec.alpha;
  const double b = beta_n(spec, n);
  const double log_ratio = gamma_ln(k + a + 1.0) + gamma_ln(k + b + 1.0) - gamma_ln(k + 1.0) -
                           gamma_ln(k + a + b + 1.0);
  return std::exp(log_ratio) / (2.0 * spec.theta * (2.0 * k + a + b + 1.0));
}

double chi_eigenvalue(const MbpSpec& spec, int n, int k) {
  check_degree(n, k);
  const double th = spec.theta;
  const double tb = th * beta_n(spec, n);
  const double h = spec.d / 2.0;
  return (2.0 * th * k + tb - spec.mu + 1.0 - h) *
         (2.0 * th * k + tb + 2.0 * th * spec.alpha + 2.0 * th + spec.mu + h - 1.0);
}

double apply_radial_sl_operator(const MbpSpec& spec, int n, int k, double r) {
  check_interior(r, "apply_radial_sl_operator");
  const RadialJet R = mbp_radial_jet(spec, n, k, r);
  const double th = spec.theta;
  const double s = std::pow(r, 2.0 * th);
  const double p = spec.d + 2.0 * spec.mu - 1.0;
  const double angular = n * (n + spec.d - 2.0);
  return -(1.0 - s) * R.d2 - p / r * (1.0 - s) * R.d1 + (spec.alpha + 1.0) * 2.0 * th * s / r * R.d1 +
         (spec.c + angular) / (r * r) * R.value;
}

double apply_degenerate_operator(const MbpSpec& spec, int n, int k, double r) {
  check_interior(r, "apply_degenerate_operator");
  const RadialJet R = mbp_radial_jet(spec, n, k, r);
  const double angular = n * (n + spec.d - 2.0);
  return -std::pow(r, 2.0 * spec.mu) *
         (R.d2 + (2.0 * spec.mu + spec.d - 1.0) / r * R.d1 - (angular + spec.c) / (r * r) * R.value);
}

double degenerate_lowering_rhs(const MbpSpec& spec, int n, int k, double r) {
  check_interior(r, "degenerate_lowering_rhs");
  check_degree(n, k);
  if (k == 0) return 0.0;
  const double b = beta_n(spec, n);
  const double th = spec.theta;
  MbpSpec raised = spec;
  raised.alpha = spec.alpha + 2.0;
  return -4.0 * th * th * (k + b) * (k + spec.alpha + b + 1.0) *
         std::pow(r, 2.0 * th - 2.0 + 2.0 * spec.mu) * mbp_radial_eval(raised, n, k - 1, r);
}

}  // namespace muntz
