#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli/records.hpp"
#include "muntz/errors.hpp"
#include "muntz/harmonics.hpp"
#include "muntz/oracle.hpp"
#include "muntz/solver.hpp"

namespace muntz::cli {

namespace {

struct ProblemOptions {
  std::string problem = "degenerate";
  int d = 2;
  double mu = 0.5;
  double c = 1.0;
  double z = 0.0;
  int eta = 0;
  int nu = 0;
  int N = 0;
  int K = 40;
  int count = 5;
  std::string basis = "full";
  std::string format = "csv";
  std::string out;
  std::string config;
};

struct ExtraOptions {
  std::string k_list = "8:40:8";
  std::string reference;
  std::vector<double> r{0.1, 0.5, 0.8};
  int index = 1;
  std::optional<double> match_scale;
  std::optional<double> weight_power;
  int n = 0;
  std::vector<double> c_list{1.0};
  int zeros = 1;
};

template <class T>
void assign(T& target, const nlohmann::json& j) {
  target = j.get<T>();
}

template <class T>
void assign(std::optional<T>& target, const nlohmann::json& j) {
  target = j.get<T>();
}

// Maps a config-file key onto an option so that command-line values win.
class Binder {
 public:
  template <class T>
  CLI::Option* add(CLI::App* app, const std::string& key, T& target, const std::string& help) {
    CLI::Option* opt = app->add_option("--" + key, target, help);
    setters_.push_back({key, opt, [&target, key](const nlohmann::json& j) {
                          try {
                            assign(target, j);
                          } catch (const nlohmann::json::exception&) {
                            throw DomainError("config key '" + key + "' has the wrong type");
                          }
                        }});
    return opt;
  }

  void apply(const nlohmann::json& cfg, const CLI::App* app) const {
    if (!cfg.is_object()) throw DomainError("config file must hold a JSON object");
    for (const auto& [key, value] : cfg.items()) {
      if (key == "schema") continue;
      bool known = false;
      for (const auto& s : setters_) {
        if (s.key != key || !owned(s.option, app)) continue;
        known = true;
        if (s.option->count() == 0) s.set(value);
      }
      if (!known) throw DomainError("unknown config key '" + key + "'");
    }
  }

 private:
  struct Setter {
    std::string key;
    CLI::Option* option;
    std::function<void(const nlohmann::json&)> set;
  };

  static bool owned(const CLI::Option* opt, const CLI::App* app) {
    for (const CLI::Option* o : app->get_options()) {
      if (o == opt) return true;
    }
    return false;
  }

  std::vector<Setter> setters_;
};

void add_problem_options(CLI::App* app, Binder& bind, ProblemOptions& o) {
  bind.add(app, "problem", o.problem, "degenerate | fractional")->check(CLI::IsMember({"degenerate", "fractional"}));
  bind.add(app, "d", o.d, "space dimension");
  bind.add(app, "mu", o.mu, "diffusion exponent (degenerate)");
  bind.add(app, "c", o.c, "inverse-square coefficient");
  bind.add(app, "z", o.z, "power-potential coefficient (fractional)");
  bind.add(app, "eta", o.eta, "potential parameter eta (fractional)");
  bind.add(app, "nu", o.nu, "potential parameter nu (fractional)");
  bind.add(app, "N", o.N, "maximum harmonic degree");
  bind.add(app, "K", o.K, "radial truncation");
  bind.add(app, "count", o.count, "number of eigenvalues");
  bind.add(app, "basis", o.basis, "full | half (degenerate)")->check(CLI::IsMember({"full", "half"}));
}

void add_output_options(CLI::App* app, Binder& bind, ProblemOptions& o) {
  bind.add(app, "format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  bind.add(app, "out", o.out, "output file (relative paths resolve under MUNTZ_OUT_DIR)");
  app->add_option("--config", o.config, "JSON file mirroring the flags");
}

ProblemConfig to_config(const ProblemOptions& o) {
  ProblemConfig cfg;
  cfg.kind = parse_problem_kind(o.problem);
  cfg.d = o.d;
  cfg.mu = o.mu;
  cfg.c = o.c;
  cfg.z = o.z;
  cfg.eta = o.eta;
  cfg.nu = o.nu;
  cfg.basis = parse_basis_variant(o.basis);
  cfg.validate();
  return cfg;
}

SpectrumRequest to_request(const ProblemOptions& o) {
  SpectrumRequest req;
  req.cfg = to_config(o);
  req.N = o.N;
  req.K = o.K;
  req.count = o.count;
  req.validate();
  return req;
}

Json request_echo(const SpectrumRequest& req) {
  Json j = config_to_json(req.cfg);
  j["N"] = req.N;
  j["K"] = req.K;
  j["count"] = req.count;
  return j;
}

std::vector<int> parse_k_list(const std::string& text) {
  std::vector<int> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw DomainError("--K-list expects a:b:step, got '" + text + "'");
    }
  }
  if (parts.size() == 2) parts.push_back(1);
  if (parts.size() != 3 || parts[0] < 1 || parts[1] < parts[0] || parts[2] < 1) {
    throw DomainError("--K-list expects a:b:step with 1 <= a <= b and step >= 1, got '" + text + "'");
  }
  std::vector<int> ks;
  for (int k = parts[0]; k <= parts[1]; k += parts[2]) ks.push_back(k);
  return ks;
}

struct Output {
  std::string schema;
  Json config;
  Table table;
  Json extra = Json::object();
};

Output cmd_solve(const ProblemOptions& o) {
  const SpectrumRequest req = to_request(o);
  Output res{"solve", request_echo(req), {{"index", "lambda", "n", "radial_rank", "multiplicity"}, {}}};
  const std::vector<EigenResult> spectrum = solve_spectrum(req);
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const EigenResult& e = spectrum[i];
    res.table.rows.push_back({Json(i + 1), Json(e.lambda), Json(e.n), Json(e.radial_rank), Json(e.multiplicity)});
  }
  return res;
}

Output cmd_oracle(const ProblemOptions& o, const ExtraOptions& x) {
  if (x.zeros < 1) throw DomainError("--m must be >= 1");
  if (o.N < 0) throw DomainError("N must be >= 0");
  Json echo = Json::object();
  echo["d"] = o.d;
  echo["mu"] = o.mu;
  echo["c"] = x.c_list;
  echo["N"] = o.N;
  echo["m"] = x.zeros;
  Output res{"oracle", echo, {{"c", "n", "m", "order", "zero", "lambda"}, {}}};
  for (double c : x.c_list) {
    for (int n = 0; n <= o.N; ++n) {
      if (harmonic_dim(n, o.d) == 0) continue;
      for (int m = 1; m <= x.zeros; ++m) {
        const OracleEigen e = oracle_eigen(o.d, o.mu, c, n, m);
        res.table.rows.push_back({Json(c), Json(n), Json(m), Json(e.nu_order), Json(e.zero), Json(e.lambda)});
      }
    }
  }
  return res;
}

struct Target {
  int n;
  int rank;
  double lambda;
};

std::vector<Target> oracle_targets(const SpectrumRequest& req) {
  const ProblemConfig& cfg = req.cfg;
  std::vector<Target> all;
  for (int n = 0; n <= req.N; ++n) {
    if (harmonic_dim(n, cfg.d) == 0) continue;
    for (int m = 1; m <= req.count; ++m) all.push_back({n, m, analytic_eigenvalue(cfg.d, cfg.mu, cfg.c, n, m)});
  }
  std::stable_sort(all.begin(), all.end(), [](const Target& a, const Target& b) {
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    if (a.n != b.n) return a.n < b.n;
    return a.rank < b.rank;
  });
  if (all.size() > static_cast<std::size_t>(req.count)) all.resize(req.count);
  return all;
}

Output cmd_convergence(const ProblemOptions& o, const ExtraOptions& x) {
  SpectrumRequest req = to_request(o);
  const std::vector<int> ks = parse_k_list(x.k_list);
  std::string reference = x.reference;
  if (reference.empty()) reference = req.cfg.kind == ProblemKind::degenerate ? "oracle" : "self";
  if (reference != "oracle" && reference != "self") throw DomainError("--reference must be oracle or self");
  if (reference == "oracle" && req.cfg.kind != ProblemKind::degenerate) {
    throw DomainError("oracle reference exists only for the degenerate problem");
  }
  std::vector<Target> targets;
  int reference_k = 0;
  if (reference == "oracle") {
    targets = oracle_targets(req);
  } else {
    SpectrumRequest big = req;
    big.K = 2 * ks.back();
    reference_k = big.K;
    for (const EigenResult& e : solve_spectrum(big)) targets.push_back({e.n, e.radial_rank, e.lambda});
  }
  Json echo = request_echo(req);
  echo.erase("K");
  echo["K_list"] = ks;
  echo["reference"] = reference;
  if (reference == "self") echo["reference_K"] = reference_k;
  Output res{"convergence", echo, {{"K", "eigen_index", "lambda", "abs_error"}, {}}};
  for (int K : ks) {
    SpectrumRequest at = req;
    at.K = K;
    at.count = (req.N + 1) * K;
    const std::vector<EigenResult> spectrum = solve_spectrum(at);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const auto hit = std::find_if(spectrum.begin(), spectrum.end(), [&](const EigenResult& e) {
        return e.n == targets[i].n && e.radial_rank == targets[i].rank;
      });
      if (hit == spectrum.end()) continue;
      res.table.rows.push_back(
          {Json(K), Json(i + 1), Json(hit->lambda), Json(std::abs(hit->lambda - targets[i].lambda))});
    }
  }
  return res;
}

Output cmd_eigenfunction(const ProblemOptions& o, const ExtraOptions& x) {
  SpectrumRequest req = to_request(o);
  if (x.index < 1) throw DomainError("--index must be >= 1");
  if (x.r.empty()) throw DomainError("--r needs at least one radius");
  req.count = std::max(req.count, x.index);
  const std::vector<EigenResult> spectrum = solve_spectrum(req);
  if (static_cast<std::size_t>(x.index) > spectrum.size()) throw DomainError("--index exceeds the computed spectrum");
  const EigenResult& e = spectrum[x.index - 1];
  std::vector<double> values = eigenfunction_radial_eval(e, x.r);
  double scale = 1.0;
  if (x.weight_power) {
    scale = 1.0 / std::sqrt(radial_norm_sq(e, *x.weight_power));
    for (double& v : values) v *= scale;
  }
  if (x.match_scale) {
    if (values[0] == 0.0) throw NumericalError("--match-scale: eigenfunction vanishes at the first radius");
    const double factor = *x.match_scale / values[0];
    scale *= factor;
    for (double& v : values) v *= factor;
  }
  Json echo = request_echo(req);
  echo["index"] = x.index;
  echo["r"] = x.r;
  if (x.weight_power) echo["weight_power"] = *x.weight_power;
  Output res{"eigenfunction", echo, {{"r", "value"}, {}}};
  res.extra["lambda"] = e.lambda;
  res.extra["n_degree"] = e.n;
  res.extra["radial_rank"] = e.radial_rank;
  res.extra["scale"] = scale;
  for (std::size_t i = 0; i < x.r.size(); ++i) res.table.rows.push_back({Json(x.r[i]), Json(values[i])});
  return res;
}

std::string render(const Output& res, const std::string& format) {
  if (format == "csv") return to_csv(res.table);
  Json doc = Json::object();
  doc["schema"] = "muntz." + res.schema + "/" + std::to_string(kSchemaVersion);
  doc["command"] = res.schema;
  doc["config"] = res.config;
  for (const auto& [k, v] : res.extra.items()) doc[k] = v;
  doc["rows"] = rows_to_json(res.table);
  return dump_json(doc);
}

void deliver(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::filesystem::path path(out_path);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("MUNTZ_OUT_DIR"); dir != nullptr && *dir != '\0') path = std::filesystem::path(dir) / path;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw DomainError("cannot open output file '" + path.string() + "'");
  file << text;
  if (!file) throw DomainError("failed writing output file '" + path.string() + "'");
}

nlohmann::json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

std::string one_line(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral-Galerkin eigenvalue solver on the unit ball", "muntz"};
  app.require_subcommand(1);
  Binder bind;
  ProblemOptions o;
  ExtraOptions x;

  CLI::App* solve = app.add_subcommand("solve", "smallest eigenvalues over harmonic degrees 0..N");
  add_problem_options(solve, bind, o);
  add_output_options(solve, bind, o);

  CLI::App* oracle = app.add_subcommand("oracle", "analytic eigenvalues of the degenerate problem");
  bind.add(oracle, "d", o.d, "space dimension");
  bind.add(oracle, "mu", o.mu, "diffusion exponent");
  bind.add(oracle, "c", x.c_list, "inverse-square coefficients")->delimiter(',');
  bind.add(oracle, "N", o.N, "maximum harmonic degree");
  bind.add(oracle, "m", x.zeros, "zeros per degree");
  add_output_options(oracle, bind, o);

  CLI::App* conv = app.add_subcommand("convergence", "eigenvalue error against K");
  add_problem_options(conv, bind, o);
  bind.add(conv, "K-list", x.k_list, "a:b:step");
  bind.add(conv, "reference", x.reference, "oracle | self")->check(CLI::IsMember({"oracle", "self"}));
  add_output_options(conv, bind, o);

  CLI::App* eig = app.add_subcommand("eigenfunction", "radial samples of one eigenfunction");
  add_problem_options(eig, bind, o);
  bind.add(eig, "r", x.r, "radii, comma separated")->delimiter(',');
  bind.add(eig, "index", x.index, "1-based position in the sorted spectrum");
  bind.add(eig, "weight-power", x.weight_power, "normalise to unit int u^2 r^{d-1+P} dr instead of unit mass");
  bind.add(eig, "match-scale", x.match_scale, "rescale so the first radius takes this value");
  add_output_options(eig, bind, o);

  CLI::App* mats = app.add_subcommand("matrices", "JSON dump of one radial block");
  add_problem_options(mats, bind, o);
  bind.add(mats, "n", x.n, "harmonic degree");
  add_output_options(mats, bind, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "muntz: " << one_line(e.what()) << '\n';
    return kExitConfig;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    if (!o.config.empty()) bind.apply(load_config(o.config), active);
    std::string text;
    if (active == mats) {
      const ProblemConfig cfg = to_config(o);
      if (x.n < 0 || harmonic_dim(x.n, cfg.d) == 0) throw DomainError("--n is not a valid harmonic degree for d");
      if (o.K < 1) throw DomainError("K must be >= 1");
      text = dump_json(block_to_json(assemble_block(cfg, x.n, o.K), cfg));
    } else if (active == solve) {
      text = render(cmd_solve(o), o.format);
    } else if (active == oracle) {
      text = render(cmd_oracle(o, x), o.format);
    } else if (active == conv) {
      text = render(cmd_convergence(o, x), o.format);
    } else {
      text = render(cmd_eigenfunction(o, x), o.format);
    }
    deliver(text, o.out, out);
    return kExitOk;
  } catch (const DomainError& e) {
    err << "muntz: " << one_line(e.what()) << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "muntz: " << one_line(e.what()) << '\n';
    return kExitNumerical;
  }
}

}  // namespace muntz::cli
