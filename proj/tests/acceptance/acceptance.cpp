// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "muntz/assembly.hpp"
#include "muntz/linalg.hpp"
#include "muntz/mbp.hpp"
#include "muntz/oracle.hpp"
#include "muntz/solver.hpp"
#include "oracles/oracles.hpp"

using namespace muntz;

namespace {

// Tolerances.
constexpr double kSpectrumAbs = 1e-9;
constexpr double kSpectrumSeconds = 10.0;
constexpr double kOracleGalerkinAbs = 1e-9;
constexpr double kOraclePrintedRel = 1e-10;
constexpr double kProfileRatioRel = 1e-8;
constexpr double kProfileFitAbs = 1e-9;
constexpr double kConvergedAbs = 1e-10;
constexpr int kConvergedByK = 32;
constexpr int kMonotoneFromK = 8;
// Allowed rise between consecutive K, in ulps of lambda.
constexpr double kMonotoneUlps = 64.0;
constexpr double kSelfRefRel = 1e-8;
constexpr double kSelfDropOrders = 6.0;
constexpr double kRelFloor = std::numeric_limits<double>::epsilon() / 2;
constexpr double kGramRel = 1e-10;
constexpr double kSobolevRel = 1e-9;
constexpr double kClosedFormRel = 1e-12;
constexpr double kOperatorRel = 1e-8;
constexpr double kUltrasphericalAbs = 1e-12;
constexpr double kSuiteSeconds = 300.0;

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail) {
  std::printf("%s  %2d  %-44s %s\n", pass ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

std::vector<std::map<std::string, double>> cli_rows(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  if (cli::run(args, out, err) != cli::kExitOk) throw std::runtime_error("cli failed: " + err.str());
  const auto lines = split(out.str(), '\n');
  const auto header = split(lines.at(0), ',');
  std::vector<std::map<std::string, double>> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto cells = split(lines[i], ',');
    std::map<std::string, double> row;
    for (std::size_t j = 0; j < header.size(); ++j) row[header[j]] = std::stod(cells.at(j));
    rows.push_back(row);
  }
  return rows;
}

ProblemConfig degenerate(int d, double mu, double c, BasisVariant basis = BasisVariant::full) {
  ProblemConfig cfg;
  cfg.d = d;
  cfg.mu = mu;
  cfg.c = c;
  cfg.basis = basis;
  return cfg;
}

ProblemConfig fractional(int d, int eta, int nu, double c, double z) {
  ProblemConfig cfg;
  cfg.kind = ProblemKind::fractional;
  cfg.d = d;
  cfg.eta = eta;
  cfg.nu = nu;
  cfg.c = c;
  cfg.z = z;
  return cfg;
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

// Worst |computed - tabulated| over the rows of one reference spectrum, via the CLI.
double spectrum_via_cli(int d, const std::vector<oracle::SpectrumRow>& table) {
  double worst = 0.0;
  std::map<double, std::vector<std::map<std::string, double>>> by_c;
  for (const auto& row : table) {
    if (by_c.count(row.c) == 0) {
      by_c[row.c] = cli_rows({"solve", "--problem", "degenerate", "--d", std::to_string(d), "--mu", "0.5", "--c",
                              num(row.c), "--N", "2", "--K", "40", "--count", "12"});
    }
    double got = std::numeric_limits<double>::quiet_NaN();
    for (const auto& r : by_c[row.c]) {
      if (static_cast<int>(r.at("n")) == row.n && static_cast<int>(r.at("radial_rank")) == row.k + 1) got = r.at("lambda");
    }
    const double e = std::abs(got - row.lambda);
    worst = std::isnan(e) ? std::numeric_limits<double>::infinity() : std::max(worst, e);
  }
  return worst;
}

void criterion_disk() {
  const auto t0 = std::chrono::steady_clock::now();
  const double worst = spectrum_via_cli(2, oracle::disk_spectrum());
  const double secs = seconds_since(t0);
  report(1, "disk spectrum d=2 mu=1/2 (8 rows, K=40)", worst <= kSpectrumAbs && secs <= kSpectrumSeconds,
         "max abs err " + fmt("%.2e", worst) + ", " + fmt("%.2f", secs) + " s");
}

void criterion_ball() {
  const double worst = spectrum_via_cli(3, oracle::ball_spectrum());
  report(2, "ball spectrum d=3 mu=1/2 (8 rows, K=40)", worst <= kSpectrumAbs, "max abs err " + fmt("%.2e", worst));
}

void criterion_oracle() {
  double worst_galerkin = 0.0;
  double worst_printed = 0.0;
  for (int d : {2, 3}) {
    for (const auto& row : d == 2 ? oracle::disk_spectrum() : oracle::ball_spectrum()) {
      const double exact = analytic_eigenvalue(d, 0.5, row.c, row.n, row.k + 1);
      const auto res = solve_radial(assemble_block(degenerate(d, 0.5, row.c), row.n, 40));
      worst_galerkin = std::max(worst_galerkin, std::abs(res[row.k].lambda - exact));
      worst_printed = std::max(worst_printed, oracle::rel_err(exact, row.lambda));
    }
  }
  report(3, "Bessel-zero oracle vs Galerkin and printed", worst_galerkin <= kOracleGalerkinAbs && worst_printed <= kOraclePrintedRel,
         "galerkin abs " + fmt("%.2e", worst_galerkin) + ", printed rel " + fmt("%.2e", worst_printed));
}

void criterion_profile() {
  std::vector<double> got;
  std::vector<double> want;
  double worst_ratio = 0.0;
  for (double c : {1.0, 2.0}) {
    std::vector<double> rs;
    std::vector<double> ref;
    for (const auto& p : oracle::disk_ground_profile()) {
      if (p.c == c) {
        rs.push_back(p.r);
        ref.push_back(p.value);
      }
    }
    std::string rlist;
    for (double r : rs) rlist += (rlist.empty() ? "" : ",") + num(r);
    // Unit norm against r^{d-1+2mu-2}.
    const auto rows = cli_rows({"eigenfunction", "--d", "2", "--mu", "0.5", "--c", num(c), "--N", "0", "--K", "40",
                                "--index", "1", "--r", rlist, "--weight-power", "-1"});
    for (std::size_t i = 0; i < rows.size(); ++i) {
      got.push_back(rows[i].at("value"));
      want.push_back(ref[i]);
      if (i > 0) worst_ratio = std::max(worst_ratio, oracle::rel_err(rows[i].at("value") / rows[0].at("value"), ref[i] / ref[0]));
    }
  }
  double num_s = 0.0, den = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    num_s += got[i] * want[i];
    den += got[i] * got[i];
  }
  const double s = num_s / den;
  double worst_fit = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) worst_fit = std::max(worst_fit, std::abs(s * got[i] - want[i]));
  report(4, "ground-state radial profile d=2 mu=1/2", worst_ratio <= kProfileRatioRel && worst_fit <= kProfileFitAbs,
         "ratio rel " + fmt("%.2e", worst_ratio) + ", single-scale fit abs " + fmt("%.2e", worst_fit) + " (scale " +
             fmt("%.10f", s) + ")");
}

void criterion_convergence() {
  bool ok = true;
  double worst_at = 0.0;
  double worst_rise = 0.0;
  std::string where;
  for (int d : {2, 3}) {
    for (double c : {2.0, 10.0}) {
      for (BasisVariant basis : {BasisVariant::full, BasisVariant::half}) {
        std::vector<std::vector<double>> err(3);
        std::vector<double> lam(3);
        for (int K = kMonotoneFromK; K <= 40; ++K) {
          const auto res = solve_spectrum({degenerate(d, 0.5, c, basis), 3, K, 3});
          for (int i = 0; i < 3; ++i) {
            const double exact = analytic_eigenvalue(d, 0.5, c, res[i].n, res[i].radial_rank);
            err[i].push_back(std::abs(res[i].lambda - exact));
            lam[i] = exact;
          }
        }
        for (int i = 0; i < 3; ++i) {
          const double at = err[i][kConvergedByK - kMonotoneFromK];
          worst_at = std::max(worst_at, at);
          if (at > kConvergedAbs) {
            ok = false;
            where += " d" + std::to_string(d) + "c" + num(c) + to_string(basis).data() + "#" + std::to_string(i + 1);
          }
          for (std::size_t k = 1; k < err[i].size(); ++k) {
            const double rise = err[i][k] - err[i][k - 1];
            const double allow = kMonotoneUlps * std::numeric_limits<double>::epsilon() * lam[i];
            worst_rise = std::max(worst_rise, rise / allow);
            if (rise > allow) ok = false;
          }
        }
      }
    }
  }
  report(5, "exponential convergence, full and half bases", ok,
         "max err at K=32 " + fmt("%.2e", worst_at) + ", worst rise/allowance " + fmt("%.2f", worst_rise) + where);
}

void criterion_fractional() {
  const std::vector<ProblemConfig> cfgs = {fractional(1, 3, 2, 2.0, -3.0), fractional(2, 1, 4, 5.0, 3.0),
                                           fractional(3, 1, 2, 10.0, 1.0), fractional(4, 3, 5, 0.1, 1.0)};
  bool agree = true;
  bool drop = true;
  std::string detail;
  for (std::size_t c = 0; c < cfgs.size(); ++c) {
    const auto ref = solve_spectrum({cfgs[c], 10, 80, 5});
    const auto rel = [&](int K) {
      const auto res = solve_spectrum({cfgs[c], 10, K, 5});
      double worst = 0.0;
      for (int i = 0; i < 5; ++i) worst = std::max(worst, oracle::rel_err(res[i].lambda, ref[i].lambda));
      return worst;
    };
    const double at40 = rel(40);
    const double at8 = rel(8);
    double tail = at40;
    for (int K = 9; K <= 40; ++K) tail = std::min(tail, rel(K));
    const double orders = std::log10(std::max(at8, kRelFloor) / std::max(tail, kRelFloor));
    agree = agree && at40 <= kSelfRefRel;
    drop = drop && orders >= kSelfDropOrders;
    detail += " [" + std::to_string(c) + "] K40 " + fmt("%.1e", at40) + " K8 " + fmt("%.1e", at8) + " drop " +
              fmt("%.1f", orders);
  }
  report(6, "fractional potential, K=40 vs K=80, 6-order drop", agree && drop,
         std::string("self-agreement ") + (agree ? "ok" : "BAD") + ", drop " + (drop ? "ok" : "short") + ";" + detail);
}

MbpSpec random_spec(double alpha) {
  MbpSpec s;
  s.alpha = alpha;
  s.d = static_cast<int>(oracle::uniform(1, 4.999));
  s.mu = oracle::uniform(-0.4, 0.9);
  s.theta = oracle::uniform(0.3, 1.5);
  s.c = oracle::uniform(0.0, 6.0) + (s.d == 1 ? 1.0 : 0.0);
  return s;
}

double gamma_ratio(const MbpSpec& s, int n, int k) {
  const double a = s.alpha;
  const double b = oracle::mbp_beta(s, n);
  return std::exp(std::lgamma(k + a + 1) + std::lgamma(k + b + 1) - std::lgamma(k + 1) - std::lgamma(k + a + b + 1)) /
         (2 * s.theta * (2 * k + a + b + 1));
}

void criterion_orthogonality() {
  double gram = 0.0;
  const double alphas[3] = {0.0, 1.0, 2.5};
  for (int draw = 0; draw < 20; ++draw) {
    const MbpSpec s = random_spec(alphas[draw % 3]);
    const int n = draw % 3;
    const QuadratureRule q = gauss_jacobi(16, s.alpha, oracle::mbp_beta(s, n));
    std::vector<std::vector<double>> G(13, std::vector<double>(13));
    for (int k = 0; k <= 12; ++k) {
      for (int j = 0; j <= k; ++j) {
        G[k][j] = oracle::integrate_radial(q, s.theta, [&](double r) {
          return oracle::mbp_R(s, n, k, r) * oracle::mbp_R(s, n, j, r) *
                 std::pow(r, 2 * s.theta + 2 * s.mu - 2 + s.d - 1) * std::pow(1 - std::pow(r, 2 * s.theta), s.alpha);
        });
      }
    }
    for (int k = 0; k <= 12; ++k) {
      gram = std::max(gram, oracle::rel_err(G[k][k], mbp_norm_sq(s, n, k)));
      for (int j = 0; j < k; ++j) gram = std::max(gram, std::abs(G[k][j]) / std::sqrt(G[k][k] * G[j][j]));
    }
  }

  double sobolev = 0.0;
  for (int draw = 0; draw < 10; ++draw) {
    const MbpSpec s = random_spec(-1.0);
    const int n = s.d == 1 ? draw % 2 : draw % 4;
    for (int k = 0; k <= 10; ++k) {
      const double diag = oracle::mbp_sobolev(s, n, k, k, 16);
      sobolev = std::max(sobolev, oracle::rel_err(diag, sobolev_stiffness_entry(s, n, k)));
      for (int j = 0; j < k; ++j) sobolev = std::max(sobolev, std::abs(oracle::mbp_sobolev(s, n, k, j, 16)) / diag);
    }
  }

  double three_term = 0.0;
  for (int draw = 0; draw < 6; ++draw) {
    const MbpSpec s = random_spec(0.0);
    const int n = draw % 3;
    const double L = n * (n + s.d - 2.0);
    const QuadratureRule q = gauss_jacobi(16, 0.0, oracle::mbp_beta(s, n) - 1.0);
    const auto form = [&](int k, int j) {
      return oracle::integrate_radial(q, s.theta, [&](double r) {
        const double rk = oracle::mbp_R(s, n, k, r);
        const double rj = oracle::mbp_R(s, n, j, r);
        const double grad = (oracle::mbp_dR(s, n, k, r) * oracle::mbp_dR(s, n, j, r) + L * rk * rj / (r * r)) *
                            std::pow(r, 2 * s.mu) * (1 - std::pow(r, 2 * s.theta));
        return (grad + s.c * rk * rj * std::pow(r, 2 * s.mu - 2) + L * rk * rj * std::pow(r, 2 * s.mu + 2 * s.theta - 2)) *
               std::pow(r, s.d - 1);
      });
    };
    for (int k = 0; k <= 8; ++k) {
      const double diag = form(k, k);
      three_term = std::max(three_term, oracle::rel_err(diag, chi_eigenvalue(s, n, k) * gamma_ratio(s, n, k)));
      for (int j = 0; j < k; ++j) three_term = std::max(three_term, std::abs(form(k, j)) / diag);
    }
  }

  double closed = 0.0;
  for (int draw = 0; draw < 20; ++draw) {
    const int d = 1 + draw % 4;
    const ProblemConfig cfg = degenerate(d, oracle::uniform(-0.45, 0.9), oracle::uniform(0.05, 8.0));
    const int n = d == 1 ? draw % 2 : draw % 4;
    const RadialBlock block = matrices_degenerate(cfg, n, 12);
    for (int k = 1; k <= 12; ++k) {
      for (int j = std::max(1, k - 1); j <= k; ++j) {
        closed = std::max(closed, oracle::rel_err(block.mass(k - 1, j - 1), oracle::mbp_gram(block.spec, n, k, j, 0.0, 20)));
      }
      closed = std::max(closed, oracle::rel_err(block.stiffness(k - 1, k - 1), oracle::mbp_sobolev(block.spec, n, k, k, 20)));
    }
  }
  const bool ok = gram <= kGramRel && sobolev <= kSobolevRel && three_term <= kSobolevRel && closed <= kClosedFormRel;
  report(7, "orthogonality and closed-form matrices", ok,
         "gram " + fmt("%.1e", gram) + ", boundary-vanishing form " + fmt("%.1e", sobolev) + ", three-term form " +
             fmt("%.1e", three_term) + ", closed forms " + fmt("%.1e", closed));
}

void criterion_operators() {
  double eig = 0.0;
  double lowering = 0.0;
  for (int draw = 0; draw < 10; ++draw) {
    const MbpSpec s = random_spec(draw % 2 == 0 ? -1.0 : oracle::uniform(-0.5, 2.0));
    const int n = s.d == 1 ? draw % 2 : draw % 3;
    const double b = oracle::mbp_beta(s, n);
    MbpSpec raised = s;
    raised.alpha += 2;
    for (int k = 0; k <= 8; ++k) {
      std::vector<double> lhs_e, rhs_e, lhs_d, rhs_d;
      for (int i = 1; i <= 20; ++i) {
        const double r = 0.05 + 0.9 * i / 21.0;
        lhs_e.push_back(apply_radial_sl_operator(s, n, k, r));
        rhs_e.push_back(chi_eigenvalue(s, n, k) * std::pow(r, 2 * s.theta - 2) * oracle::mbp_R(s, n, k, r));
        lhs_d.push_back(apply_degenerate_operator(s, n, k, r));
        rhs_d.push_back(k == 0 ? 0.0
                               : -4 * s.theta * s.theta * (k + b) * (k + s.alpha + b + 1) *
                                     std::pow(r, 2 * s.theta - 2 + 2 * s.mu) * oracle::mbp_R(raised, n, k - 1, r));
      }
      const auto sup_rel = [](const std::vector<double>& a, const std::vector<double>& w) {
        double peak = 0.0, diff = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
          peak = std::max(peak, std::abs(w[i]));
          diff = std::max(diff, std::abs(a[i] - w[i]));
        }
        return peak == 0.0 ? diff : diff / peak;
      };
      eig = std::max(eig, sup_rel(lhs_e, rhs_e));
      lowering = std::max(lowering, sup_rel(lhs_d, rhs_d));
    }
  }
  double gup = 0.0;
  for (int draw = 0; draw < 8; ++draw) {
    const double mu = oracle::uniform(0.5, 2.0);
    const double alpha = draw % 2 == 0 ? -1.0 : oracle::uniform(-0.5, 2.0);
    const MbpSpec even{alpha, mu, 1.0, 0.0, 1};
    const MbpSpec odd{alpha, mu, 1.0, 2 * mu, 1};
    for (int k = 0; k <= 8; ++k) {
      for (double x : {0.1, 0.45, 0.77, 0.99}) {
        const double e0 = oracle::jacobi_explicit(k, alpha, mu - 0.5, 2 * x * x - 1);
        const double e1 = x * oracle::jacobi_explicit(k, alpha, mu + 0.5, 2 * x * x - 1);
        gup = std::max(gup, std::abs(mbp_radial_eval(even, 0, k, x) - e0) / std::max(1.0, std::abs(e0)));
        gup = std::max(gup, std::abs(mbp_radial_eval(odd, 1, k, x) - e1) / std::max(1.0, std::abs(e1)));
      }
    }
  }
  report(8, "operator identities and 1-D reduction", eig <= kOperatorRel && lowering <= kOperatorRel && gup <= kUltrasphericalAbs,
         "eigenrelation " + fmt("%.1e", eig) + ", lowering " + fmt("%.1e", lowering) + ", ultraspherical " + fmt("%.1e", gup));
}

// Largest |i - j| with a nonzero entry.
std::size_t occupied_band(const SymBanded& A) {
  const Matrix D = A.to_dense();
  std::size_t hb = 0;
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (D(i, j) != 0.0) hb = std::max(hb, i - j);
  return hb;
}

void criterion_structure() {
  bool degenerate_ok = true;
  bool literal_ok = true;
  bool true_ok = true;
  const std::vector<ProblemConfig> frac = {fractional(1, 3, 2, 2.0, -3.0), fractional(2, 1, 4, 5.0, 3.0),
                                           fractional(3, 1, 2, 10.0, 1.0), fractional(4, 3, 5, 0.1, 1.0)};
  for (int K = 1; K <= 60; K += (K < 10 ? 1 : 10)) {
    for (int n : {0, 1, 3}) {
      const RadialBlock full = assemble_block(degenerate(2, 0.5, 2.0), n, K);
      const RadialBlock half = assemble_block(degenerate(3, 0.25, 1.0, BasisVariant::half), n, K);
      degenerate_ok = degenerate_ok && occupied_band(full.stiffness) == 0 && occupied_band(full.mass) <= 1 &&
                      occupied_band(half.stiffness) == 0 && occupied_band(half.mass) <= 2;
      if (K >= 4) degenerate_ok = degenerate_ok && occupied_band(full.mass) == 1 && occupied_band(half.mass) == 2;
      for (const auto& cfg : frac) {
        const RadialBlock b = assemble_block(cfg, n, K);
        const std::size_t sb = occupied_band(b.stiffness);
        const std::size_t mb = occupied_band(b.mass);
        literal_ok = literal_ok && sb <= static_cast<std::size_t>(cfg.nu) && mb <= static_cast<std::size_t>(cfg.eta);
        true_ok = true_ok && sb <= static_cast<std::size_t>(cfg.nu) + 1 && mb <= static_cast<std::size_t>(cfg.eta) + 1;
      }
    }
  }
  // The outermost occupied band of the exact integrals is nonzero.
  const ProblemConfig probe = fractional(3, 1, 2, 10.0, 1.0);
  const MbpSpec s = probe.basis_spec();
  const double omega = (2.0 * probe.nu - 2.0 * probe.eta) / (probe.eta + 1.0);
  const double potential_14 = oracle::mbp_gram(s, 0, 1, 4, omega, 30);
  const double mass_13 = oracle::mbp_gram(s, 0, 1, 3, 0.0, 30);
  report(9, "exact band patterns up to K=60", degenerate_ok && literal_ok && true_ok,
         std::string("diag/tri/penta ") + (degenerate_ok ? "ok" : "BAD") + ", fractional half-bandwidths nu/eta " +
             (literal_ok ? "ok" : "exceeded") + ", nu+1/eta+1 " + (true_ok ? "ok" : "BAD") + " (exact potential(1,4) " +
             fmt("%.3e", potential_14) + ", mass(1,3) " + fmt("%.3e", mass_13) + " for eta=1 nu=2)");
}

void criterion_runtime(std::chrono::steady_clock::time_point started) {
  double total = 0.0;
  bool all_passed = true;
  for (const std::string& path : split(MUNTZ_UNIT_TEST_PATHS, '|')) {
    const auto t0 = std::chrono::steady_clock::now();
    const int status = std::system((path + " > /dev/null 2>&1").c_str());
    total += seconds_since(t0);
    all_passed = all_passed && status == 0;
  }
  total += seconds_since(started);
  report(10, "full suite wall time", total <= kSuiteSeconds,
         fmt("%.1f", total) + " s including this gate" + (all_passed ? "" : " (some unit binaries failed)"));
}

}  // namespace

int main() {
  const auto started = std::chrono::steady_clock::now();
  const std::vector<std::function<void()>> criteria = {criterion_disk,        criterion_ball,      criterion_oracle,
                                                       criterion_profile,     criterion_convergence, criterion_fractional,
                                                       criterion_orthogonality, criterion_operators, criterion_structure};
  int id = 1;
  for (const auto& run : criteria) {
    try {
      run();
    } catch (const std::exception& e) {
      report(id, "criterion raised", false, e.what());
    }
    ++id;
  }
  criterion_runtime(started);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
