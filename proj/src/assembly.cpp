#include "muntz/assembly.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "muntz/errors.hpp"
#include "muntz/quadrature.hpp"
#include "muntz/specfun.hpp"

namespace muntz {

std::string_view to_string(ProblemKind kind) noexcept {
  return kind == ProblemKind::degenerate ? "degenerate" : "fractional";
}

std::string_view to_string(BasisVariant basis) noexcept {
  return basis == BasisVariant::full ? "full" : "half";
}

ProblemKind parse_problem_kind(std::string_view text) {
  if (text == "degenerate") return ProblemKind::degenerate;
  if (text == "fractional") return ProblemKind::fractional;
  throw DomainError("unknown problem kind '" + std::string(text) + "'");
}

BasisVariant parse_basis_variant(std::string_view text) {
  if (text == "full") return BasisVariant::full;
  if (text == "half") return BasisVariant::half;
  throw DomainError("unknown basis variant '" + std::string(text) + "'");
}

void ProblemConfig::validate() const {
  if (d < 1) throw DomainError("d must be >= 1");
  if (kind == ProblemKind::degenerate) {
    if (!(mu > -0.5 && mu < 1.0)) throw DomainError("degenerate problem requires -1/2 < mu < 1");
    if (!(c > 0.0)) throw DomainError("degenerate problem requires c > 0");
  } else {
    if (!(c >= 0.0)) throw DomainError("fractional problem requires c >= 0");
    if (eta < 0 || nu < 0) throw DomainError("fractional problem requires integer eta, nu >= 0");
    if (!std::isfinite(z)) throw DomainError("fractional problem requires a finite z");
  }
  basis_spec().validate();
}

double ProblemConfig::theta() const {
  if (kind == ProblemKind::fractional) return 1.0 / (eta + 1.0);
  return basis == BasisVariant::full ? 1.0 - mu : 0.5 * (1.0 - mu);
}

MbpSpec ProblemConfig::basis_spec() const {
  MbpSpec spec;
  spec.alpha = -1.0;
  spec.mu = kind == ProblemKind::fractional ? 0.0 : mu;
  spec.theta = theta();
  spec.c = c;
  spec.d = d;
  return spec;
}

double degenerate_mass_entry(double beta, double mu, int k, int j) {
  if (k < 0 || j < 0) throw DomainError("degenerate_mass_entry: degrees must be >= 0");
  const double pre = 1.0 / (1.0 - mu);
  const double b = beta;
  if (k == 0 && j == 0) return pre / (2.0 * (1.0 + b));
  if (k == j) {
    const double s = 2.0 * k + b;
    return pre * (k + b) * (k + b) / ((s - 1.0) * s * (s + 1.0));
  }
  if (k == j + 1) {
    const double s = 2.0 * k + b;
    return -pre * (k + b) * (k + b - 1.0) / (2.0 * (s - 2.0) * (s - 1.0) * s);
  }
  if (k == j - 1) {
    const double s = 2.0 * k + b;
    return -pre * (k + b) * (k + b + 1.0) / (2.0 * s * (s + 1.0) * (s + 2.0));
  }
  return 0.0;
}

double sobolev_stiffness_entry(const MbpSpec& spec, int n, int k) {
  if (k < 0) throw DomainError("sobolev_stiffness_entry: degree must be >= 0");
  const double b = beta_n(spec, n);
  if (k == 0) return spec.theta * b + 1.0 - spec.d / 2.0 - spec.mu;
  return 2.0 * spec.theta * (k + b) * (k + b) / (2.0 * k + b);
}

namespace {

void check_block_args(const ProblemConfig& cfg, int n, int K) {
  cfg.validate();
  if (n < 0) throw DomainError("harmonic degree must be >= 0");
  if (K < 1) throw DomainError("radial truncation K must be >= 1");
}

}  // namespace

SymBanded mass_matrix_degenerate(const ProblemConfig& cfg, int n, int K) {
  check_block_args(cfg, n, K);
  if (cfg.kind != ProblemKind::degenerate || cfg.basis != BasisVariant::full) {
    throw DomainError("mass_matrix_degenerate: requires the degenerate problem on the full basis");
  }
  const double b = beta_n(cfg.basis_spec(), n);
  SymBanded M(K, 1);
  for (int i = 0; i < K; ++i) {
    M.set(i, i, degenerate_mass_entry(b, cfg.mu, i + 1, i + 1));
    if (i + 1 < K) M.set(i + 1, i, degenerate_mass_entry(b, cfg.mu, i + 2, i + 1));
  }
  return M;
}

SymBanded stiffness_matrix_degenerate(const ProblemConfig& cfg, int n, int K) {
  check_block_args(cfg, n, K);
  const MbpSpec spec = cfg.basis_spec();
  SymBanded S(K, 0);
  for (int i = 0; i < K; ++i) S.set(i, i, sobolev_stiffness_entry(spec, n, i + 1));
  return S;
}

SymBanded radial_gram(const MbpSpec& spec, int n, int K, int extra, std::size_t half_bandwidth,
                      Execution exec) {
  if (K < 1) throw DomainError("radial_gram: K must be >= 1");
  const QuadratureRule rule = radial_rule(spec, n, K, extra);
  const double b = rule.beta;
  const int q = static_cast<int>(rule.size());
  const JacobiParams p{spec.alpha, b};
  // Scaled node weights: w (1+rho)^extra / (4 theta 2^{beta + extra}).
  std::vector<double> root_weight(q);
  for (int i = 0; i < q; ++i) {
    const double half = 0.5 * (1.0 + rule.nodes[i]);
    const double w = rule.weights[i] * std::pow(half, extra) * std::exp2(-b) / (4.0 * spec.theta);
    root_weight[i] = std::sqrt(w);
  }
  std::vector<double> table(static_cast<std::size_t>(K) * q);
  const bool parallel = exec == Execution::parallel;
#pragma omp parallel for schedule(static) if (parallel)
  for (int k = 1; k <= K; ++k) {
    for (int i = 0; i < q; ++i) {
      table[static_cast<std::size_t>(k - 1) * q + i] = jacobi_value(k, p, rule.nodes[i]) * root_weight[i];
    }
  }
  SymBanded G(K, half_bandwidth);
  const int bw = static_cast<int>(G.bands().size()) - 1;
#pragma omp parallel for schedule(static) if (parallel)
  for (int j = 0; j < K; ++j) {
    const double* aj = &table[static_cast<std::size_t>(j) * q];
    for (int i = j; i <= std::min(K - 1, j + bw); ++i) {
      const double* ai = &table[static_cast<std::size_t>(i) * q];
      double s = 0.0;
      for (int t = 0; t < q; ++t) s += ai[t] * aj[t];
      G.set(i, j, s);
    }
  }
  return G;
}

RadialBlock matrices_degenerate(const ProblemConfig& cfg, int n, int K) {
  RadialBlock block;
  block.n = n;
  block.K = K;
  block.stiffness = stiffness_matrix_degenerate(cfg, n, K);
  block.mass = mass_matrix_degenerate(cfg, n, K);
  block.spec = cfg.basis_spec();
  block.kind = ProblemKind::degenerate;
  block.basis = BasisVariant::full;
  return block;
}

RadialBlock matrices_degenerate_half_theta(const ProblemConfig& cfg, int n, int K, Execution exec) {
  check_block_args(cfg, n, K);
  if (cfg.kind != ProblemKind::degenerate) throw DomainError("half-theta basis applies to the degenerate problem");
  ProblemConfig half = cfg;
  half.basis = BasisVariant::half;
  RadialBlock block;
  block.n = n;
  block.K = K;
  block.spec = half.basis_spec();
  block.stiffness = stiffness_matrix_degenerate(half, n, K);
  // (1 - mu - theta) / theta = 1 for theta = (1 - mu) / 2.
  block.mass = radial_gram(block.spec, n, K, 1, 2, exec);
  block.kind = ProblemKind::degenerate;
  block.basis = BasisVariant::half;
  return block;
}

RadialBlock matrices_fractional(const ProblemConfig& cfg, int n, int K, Execution exec) {
  check_block_args(cfg, n, K);
  if (cfg.kind != ProblemKind::fractional) throw DomainError("matrices_fractional: requires the fractional problem");
  RadialBlock block;
  block.n = n;
  block.K = K;
  block.spec = cfg.basis_spec();
  block.kind = ProblemKind::fractional;
  block.basis = BasisVariant::full;
  block.mass = radial_gram(block.spec, n, K, cfg.eta, static_cast<std::size_t>(cfg.eta) + 1, exec);
  if (cfg.z == 0.0) {
    block.stiffness = SymBanded(K, 0);
    for (int i = 0; i < K; ++i) block.stiffness.set(i, i, sobolev_stiffness_entry(block.spec, n, i + 1));
  } else {
    const SymBanded V = radial_gram(block.spec, n, K, cfg.nu, static_cast<std::size_t>(cfg.nu) + 1, exec);
    block.stiffness = SymBanded(K, V.half_bandwidth());
    for (std::size_t d = 0; d < V.bands().size(); ++d) {
      for (std::size_t j = 0; j + d < static_cast<std::size_t>(K); ++j) {
        double v = cfg.z * V(j + d, j);
        if (d == 0) v += sobolev_stiffness_entry(block.spec, n, static_cast<int>(j) + 1);
        block.stiffness.set(j + d, j, v);
      }
    }
  }
  for (int i = 0; i < K; ++i) {
    if (!(block.mass(i, i) > 0.0)) throw NotPositiveDefinite(i, block.mass(i, i));
  }
  return block;
}

RadialBlock assemble_block(const ProblemConfig& cfg, int n, int K, Execution exec) {
  if (cfg.kind == ProblemKind::fractional) return matrices_fractional(cfg, n, K, exec);
  if (cfg.basis == BasisVariant::half) return matrices_degenerate_half_theta(cfg, n, K, exec);
  return matrices_degenerate(cfg, n, K);
}

}  // namespace muntz
