#include "muntz/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "muntz/errors.hpp"

namespace muntz {

namespace {

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;
};

DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

DoubleDouble quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

DoubleDouble two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

DoubleDouble operator+(DoubleDouble a, DoubleDouble b) {
  DoubleDouble s = two_sum(a.hi, b.hi);
  const DoubleDouble t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

DoubleDouble operator-(DoubleDouble a) { return {-a.hi, -a.lo}; }
DoubleDouble operator-(DoubleDouble a, DoubleDouble b) { return a + (-b); }

DoubleDouble operator*(DoubleDouble a, DoubleDouble b) {
  DoubleDouble p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

DoubleDouble operator*(DoubleDouble a, double b) { return a * DoubleDouble{b, 0.0}; }

DoubleDouble operator/(DoubleDouble a, DoubleDouble b) {
  const double q1 = a.hi / b.hi;
  DoubleDouble r = a - b * q1;
  const double q2 = r.hi / b.hi;
  r = r - b * q2;
  const double q3 = r.hi / b.hi;
  return quick_two_sum(q1, q2) + DoubleDouble{q3, 0.0};
}

void check_bessel_args(double nu, double x) {
  if (!(nu >= 0.0)) throw DomainError("bessel_j: order must be >= 0, got " + std::to_string(nu));
  if (!(x >= 0.0)) throw DomainError("bessel_j: argument must be >= 0, got " + std::to_string(x));
  if (x > kBesselWindow) {
    throw WindowExceeded("bessel_j: argument " + std::to_string(x) + " outside [0, " +
                         std::to_string(kBesselWindow) + "]");
  }
}

// Series sum_{m>=0} (-q)^m / (m! (nu+1)_m) * weight(m), q = (x/2)^2, in
// double-double. weight(m) = 1 gives J_nu / leading term, weight(m) = 2m + nu
// gives x J_nu' / leading term.
template <typename Weight>
double reduced_series(double nu, double x, Weight weight) {
  const double h = 0.5 * x;  // exact
  const DoubleDouble q = two_prod(h, h);
  DoubleDouble ratio{1.0, 0.0};
  DoubleDouble sum = ratio * weight(0);
  double largest = std::abs(ratio.hi);
  for (int m = 1; m < 1000; ++m) {
    const DoubleDouble denom = two_sum(static_cast<double>(m), nu) * static_cast<double>(m);
    ratio = -(ratio * q) / denom;
    const DoubleDouble term = ratio * weight(m);
    sum = sum + term;
    largest = std::max(largest, std::abs(ratio.hi));
    // Past the peak the terms fall off factorially; stop at double-double
    // resolution of the largest intermediate term.
    if (m > h && std::abs(ratio.hi) <= 1e-33 * largest) break;
  }
  return sum.hi + sum.lo;
}

double leading_term(double nu, double x) {
  // (x/2)^nu / Gamma(nu + 1)
  if (nu == 0.0) return 1.0;
  return std::exp(nu * std::log(0.5 * x) - gamma_ln(nu + 1.0));
}

}  // namespace

double gamma_ln(double x) {
  if (!(x > 0.0)) throw DomainError("gamma_ln: argument must be positive, got " + std::to_string(x));
  if (x < 0.5) return gamma_ln(x + 1.0) - std::log(x);
  const double z = x - 1.0;
  double a = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (z + static_cast<double>(i));
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

double jacobi_eval(int n, JacobiParams p, double x) {
  const double a = p.alpha;
  const double b = p.beta;
  if (n < 0) throw DomainError("jacobi_eval: negative degree");
  if (!(a > -1.0) || !(b > -1.0)) {
    throw DomainError("jacobi_eval: parameters must exceed -1 (alpha=" + std::to_string(a) +
                      ", beta=" + std::to_string(b) + ")");
  }
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
  for (int k = 2; k <= n; ++k) {
    const double kk = k;
    const double s = 2.0 * kk + a + b;
    const double c1 = 2.0 * kk * (kk + a + b) * (s - 2.0);
    const double c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
    const double c3 = 2.0 * (kk + a - 1.0) * (kk + b - 1.0) * s;
    const double next = (c2 * cur - c3 * prev) / c1;
    prev = cur;
    cur = next;
  }
  return cur;
}

double jacobi_eval_m1(int n, double beta, double x) {
  if (n < 0) throw DomainError("jacobi_eval_m1: negative degree");
  if (!(beta > -1.0)) throw DomainError("jacobi_eval_m1: beta must exceed -1");
  if (n == 0) return 1.0;
  return (n + beta) / n * (0.5 * (x - 1.0)) * jacobi_eval(n - 1, {1.0, beta}, x);
}

double jacobi_value(int n, JacobiParams p, double x) {
  return p.generalized() ? jacobi_eval_m1(n, p.beta, x) : jacobi_eval(n, p, x);
}

double jacobi_deriv(int n, JacobiParams p, double x, int order) {
  if (order < 0) throw DomainError("jacobi_deriv: negative derivative order");
  if (order == 0) return jacobi_value(n, p, x);
  if (n < order) return 0.0;
  // d/dx P_n^{(a,b)} = (n+a+b+1)/2 P_{n-1}^{(a+1,b+1)}; for a = -1 this is
  // (n+b)/2 P_{n-1}^{(0,b+1)}, so the same product formula covers both.
  double factor = 1.0;
  for (int i = 0; i < order; ++i) factor *= 0.5 * (n + p.alpha + p.beta + 1.0 + i);
  return factor * jacobi_eval(n - order, {p.alpha + order, p.beta + order}, x);
}

double jacobi_sl_eigenvalue(int n, JacobiParams p) noexcept {
  return n * (n + p.alpha + p.beta + 1.0);
}

double bessel_j(double nu, double x) {
  check_bessel_args(nu, x);
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  return leading_term(nu, x) * reduced_series(nu, x, [](int) { return DoubleDouble{1.0, 0.0}; });
}

double bessel_j_deriv(double nu, double x) {
  check_bessel_args(nu, x);
  if (!(x > 0.0)) throw DomainError("bessel_j_deriv: argument must be positive");
  const double s = reduced_series(nu, x, [nu](int m) { return two_sum(2.0 * m, nu); });
  return leading_term(nu, x) * s / x;
}

double bessel_j_zero(double nu, int m) {
  if (m < 1) throw DomainError("bessel_j_zero: zero index must be >= 1");
  if (!(nu >= 0.0)) throw DomainError("bessel_j_zero: order must be >= 0");

  // Consecutive zeros are more than pi - 0.05 apart and j_{nu,1} > nu + 1.8,
  // so a bracket of length pi starting at max(nu, previous + 1) holds at most
  // one zero.
  double previous = 0.0;
  double root = 0.0;
  for (int index = 1; index <= m; ++index) {
    double lo = index == 1 ? nu : previous + 1.0;
    if (lo >= kBesselWindow) {
      throw WindowExceeded("bessel_j_zero: zero " + std::to_string(index) + " of J_" +
                           std::to_string(nu) + " lies beyond the series window");
    }
    double f_lo = bessel_j(nu, lo);
    double hi = lo;
    double f_hi = f_lo;
    for (;;) {
      hi = std::min(lo + std::numbers::pi, kBesselWindow);
      f_hi = bessel_j(nu, hi);
      if (f_lo == 0.0 || (f_lo < 0.0) != (f_hi < 0.0)) break;
      if (hi >= kBesselWindow) {
        throw WindowExceeded("bessel_j_zero: zero " + std::to_string(index) + " of J_" +
                             std::to_string(nu) + " lies beyond the series window");
      }
      lo = hi;
      f_lo = f_hi;
    }
    if (f_lo == 0.0) {
      root = lo;
    } else {
      while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = bessel_j(nu, mid);
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
          lo = mid;
          f_lo = f_mid;
        } else {
          hi = mid;
        }
      }
      root = 0.5 * (lo + hi);
      for (int it = 0; it < 10; ++it) {
        const double f = bessel_j(nu, root);
        const double step = f / bessel_j_deriv(nu, root);
        root -= step;
        if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * root) break;
      }
    }
    previous = root;
  }
  return root;
}

}  // namespace muntz
