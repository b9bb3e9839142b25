#include "muntz/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "muntz/errors.hpp"
#include "muntz/harmonics.hpp"
#include "muntz/linalg.hpp"
#include "muntz/quadrature.hpp"
#include "muntz/specfun.hpp"

namespace muntz {

void SpectrumRequest::validate() const {
  cfg.validate();
  if (N < 0) throw DomainError("N must be >= 0");
  if (K < 1) throw DomainError("K must be >= 1");
  if (count < 1) throw DomainError("count must be >= 1");
}

namespace {

// Reduces on S + shift M. Zero shift first; an indefinite stiffness gets
// a geometrically growing shift starting above its worst diagonal quotient.
EigenDecomposition reduce(const RadialBlock& block) {
  double base = 1.0;
  for (int i = 0; i < block.K; ++i) base = std::max(base, 1.0 - block.stiffness(i, i) / block.mass(i, i));
  constexpr int kAttempts = 40;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    const double shift = attempt == 0 ? 0.0 : base * std::pow(4.0, attempt - 1);
    try {
      return generalized_sym_eig_shifted(block.stiffness, block.mass, shift, true);
    } catch (const NotPositiveDefinite&) {
    }
  }
  throw NumericalError("solve_radial: no definite shift found for the stiffness matrix");
}

}  // namespace

std::vector<EigenResult> solve_radial(const RadialBlock& block) {
  const EigenDecomposition eig = reduce(block);
  const std::int64_t mult = harmonic_dim(block.n, block.spec.d);
  std::vector<EigenResult> out;
  out.reserve(block.K);
  for (int j = 0; j < block.K; ++j) {
    EigenResult r;
    r.lambda = eig.values[j];
    r.n = block.n;
    r.radial_rank = j + 1;
    r.multiplicity = mult;
    r.coeffs = eig.vectors->column(j);
    r.spec = block.spec;
    r.trusted = 2 * (j + 1) <= block.K || block.K <= 2;
    out.push_back(normalize(std::move(r), block.mass));
  }
  return out;
}

std::vector<EigenResult> solve_spectrum(const SpectrumRequest& req, Execution exec) {
  req.validate();
  int top = req.N;
  while (top > 0 && harmonic_dim(top, req.cfg.d) == 0) --top;
  std::vector<std::vector<EigenResult>> per_degree(top + 1);
  std::vector<std::string> failures(top + 1);
  const bool parallel = exec == Execution::parallel;
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (int n = 0; n <= top; ++n) {
    try {
      const RadialBlock block = assemble_block(req.cfg, n, req.K, Execution::serial);
      per_degree[n] = solve_radial(block);
    } catch (const std::exception& e) {
      failures[n] = e.what();
    }
  }
  for (int n = 0; n <= top; ++n) {
    if (!failures[n].empty()) throw NumericalError("degree " + std::to_string(n) + ": " + failures[n]);
  }
  std::vector<EigenResult> all;
  for (auto& v : per_degree) {
    for (auto& r : v) all.push_back(std::move(r));
  }
  std::stable_sort(all.begin(), all.end(), [](const EigenResult& a, const EigenResult& b) {
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    if (a.n != b.n) return a.n < b.n;
    return a.radial_rank < b.radial_rank;
  });
  if (all.size() > static_cast<std::size_t>(req.count)) all.resize(req.count);
  return all;
}

std::vector<EigenResult> solve_spectrum_serial(const SpectrumRequest& req) {
  return solve_spectrum(req, Execution::serial);
}

EigenResult normalize(EigenResult result, const SymBanded& mass) {
  if (result.coeffs.size() != mass.dim()) throw DomainError("normalize: coefficient length mismatch");
  const std::vector<double> Mc = mass.multiply(result.coeffs);
  double q = 0.0;
  for (std::size_t i = 0; i < Mc.size(); ++i) q += result.coeffs[i] * Mc[i];
  if (!(q > 0.0)) throw NumericalError("normalize: non-positive mass norm");
  double scale = 1.0 / std::sqrt(q);
  const auto lead = std::find_if(result.coeffs.begin(), result.coeffs.end(), [](double v) { return v != 0.0; });
  if (lead != result.coeffs.end() && *lead < 0.0) scale = -scale;
  for (double& v : result.coeffs) v *= scale;
  return result;
}

double radial_norm_sq(const EigenResult& result, double weight_power) {
  const MbpSpec& spec = result.spec;
  const double th = spec.theta;
  const double b = beta_n(spec, result.n);
  const double exponent = b + (2.0 - 2.0 * spec.mu - 2.0 * th + weight_power) / (2.0 * th);
  if (!(exponent > -1.0)) throw DomainError("radial_norm_sq: weight is not integrable at the origin");
  const int K = static_cast<int>(result.coeffs.size());
  const QuadratureRule rule = gauss_jacobi(K + 2, 0.0, exponent);
  const JacobiParams p{spec.alpha, b};
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    double u = 0.0;
    for (int k = 0; k < K; ++k) u += result.coeffs[k] * jacobi_value(k + 1, p, rule.nodes[i]);
    sum += rule.weights[i] * u * u;
  }
  return sum * std::exp2(-exponent) / (4.0 * th);
}

double galerkin_residual(const RadialBlock& block, const EigenResult& result) {
  const std::vector<double> Su = block.stiffness.multiply(result.coeffs);
  const std::vector<double> Mu = block.mass.multiply(result.coeffs);
  double worst = 0.0;
  for (std::size_t i = 0; i < Su.size(); ++i) worst = std::max(worst, std::abs(Su[i] - result.lambda * Mu[i]));
  return worst;
}

std::vector<double> eigenfunction_radial_eval(const EigenResult& result, std::span<const double> r) {
  std::vector<double> out(r.size(), 0.0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] >= 0.0 && r[i] <= 1.0)) throw DomainError("eigenfunction_radial_eval: r must lie in [0, 1]");
    double s = 0.0;
    for (std::size_t k = 0; k < result.coeffs.size(); ++k) {
      s += result.coeffs[k] * mbp_radial_eval(result.spec, result.n, static_cast<int>(k) + 1, r[i]);
    }
    out[i] = s;
  }
  return out;
}

std::vector<double> eigenfunction_eval(const EigenResult& result, int ell, std::span<const double> points) {
  const int d = result.spec.d;
  if (d < 1 || d > 3) throw DomainError("eigenfunction_eval: supported for d in {1, 2, 3}");
  if (points.size() % d != 0) throw DomainError("eigenfunction_eval: point array is not a multiple of d");
  const HarmonicIndex idx{d, result.n, ell};
  idx.validate();
  const std::size_t count = points.size() / d;
  std::vector<double> out(count);
  std::vector<double> dir(d);
  for (std::size_t p = 0; p < count; ++p) {
    double r2 = 0.0;
    for (int a = 0; a < d; ++a) r2 += points[p * d + a] * points[p * d + a];
    const double r = std::sqrt(r2);
    if (r > 1.0 + 1e-14) throw DomainError("eigenfunction_eval: point outside the unit ball");
    const double rc = std::min(r, 1.0);
    const double radial = eigenfunction_radial_eval(result, std::span<const double>(&rc, 1))[0];
    if (r == 0.0) {
      if (radial == 0.0) {
        out[p] = 0.0;
        continue;
      }
      // Only constant harmonics survive at the origin.
      std::fill(dir.begin(), dir.end(), 0.0);
      dir[0] = 1.0;
    } else {
      for (int a = 0; a < d; ++a) dir[a] = points[p * d + a] / r;
    }
    out[p] = radial * harmonic_eval(idx, dir);
  }
  return out;
}

}  // namespace muntz
