#include "cli/records.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "muntz/errors.hpp"

namespace muntz::cli {

std::string format_double(double v) {
  if (!std::isfinite(v)) throw NumericalError("cannot serialise a non-finite number");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void emit(const Json& v, int indent, int depth, std::string& out) {
  const auto newline = [&](int level) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * level), ' ');
  };
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(key).dump();
        out += indent < 0 ? ":" : ": ";
        emit(item, indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Numeric arrays stay on one line.
      const bool flat = std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_primitive(); });
      out += '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += flat && indent >= 0 ? ", " : ",";
        if (!flat) newline(depth + 1);
        emit(v[i], indent, depth + 1, out);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      out += format_double(v.get<double>());
      return;
    default:
      out += v.dump();
  }
}

std::string csv_cell(const Json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

std::string dump_json(const Json& value, int indent) {
  std::string out;
  emit(value, indent, 0, out);
  out += '\n';
  return out;
}

std::string to_csv(const Table& table) {
  std::ostringstream os;
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
  return os.str();
}

Json rows_to_json(const Table& table) {
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = row[i];
    rows.push_back(std::move(obj));
  }
  return rows;
}

Json config_to_json(const ProblemConfig& cfg) {
  Json j = Json::object();
  j["problem"] = std::string(to_string(cfg.kind));
  j["d"] = cfg.d;
  if (cfg.kind == ProblemKind::degenerate) {
    j["mu"] = cfg.mu;
    j["c"] = cfg.c;
    j["basis"] = std::string(to_string(cfg.basis));
  } else {
    j["c"] = cfg.c;
    j["z"] = cfg.z;
    j["eta"] = cfg.eta;
    j["nu"] = cfg.nu;
  }
  return j;
}

ProblemConfig config_from_json(const nlohmann::json& j) {
  ProblemConfig cfg;
  try {
    cfg.kind = parse_problem_kind(j.at("problem").get<std::string>());
    cfg.d = j.at("d").get<int>();
    cfg.c = j.at("c").get<double>();
    if (cfg.kind == ProblemKind::degenerate) {
      cfg.mu = j.at("mu").get<double>();
      cfg.basis = parse_basis_variant(j.value("basis", std::string("full")));
    } else {
      cfg.z = j.at("z").get<double>();
      cfg.eta = j.at("eta").get<int>();
      cfg.nu = j.at("nu").get<int>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed config record: ") + e.what());
  }
  return cfg;
}

Json banded_to_json(const SymBanded& A) {
  Json j = Json::object();
  j["half_bandwidth"] = A.half_bandwidth();
  Json bands = Json::array();
  for (const auto& band : A.bands()) {
    Json b = Json::array();
    for (double v : band) b.push_back(v);
    bands.push_back(std::move(b));
  }
  j["bands"] = std::move(bands);
  return j;
}

SymBanded banded_from_json(const nlohmann::json& j) {
  try {
    auto bands = j.at("bands").get<std::vector<std::vector<double>>>();
    const auto declared = j.at("half_bandwidth").get<std::size_t>();
    return SymBanded::from_bands(std::move(bands), declared);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed matrix record: ") + e.what());
  }
}

Json block_to_json(const RadialBlock& block, const ProblemConfig& cfg) {
  Json j = Json::object();
  j["schema"] = "muntz.matrices/" + std::to_string(kSchemaVersion);
  j["command"] = "matrices";
  j["config"] = config_to_json(cfg);
  j["n"] = block.n;
  j["K"] = block.K;
  Json spec = Json::object();
  spec["alpha"] = block.spec.alpha;
  spec["mu"] = block.spec.mu;
  spec["theta"] = block.spec.theta;
  spec["c"] = block.spec.c;
  spec["d"] = block.spec.d;
  j["spec"] = std::move(spec);
  j["stiffness"] = banded_to_json(block.stiffness);
  j["mass"] = banded_to_json(block.mass);
  return j;
}

RadialBlock block_from_json(const nlohmann::json& j) {
  RadialBlock block;
  try {
    const ProblemConfig cfg = config_from_json(j.at("config"));
    block.kind = cfg.kind;
    block.basis = cfg.basis;
    block.n = j.at("n").get<int>();
    block.K = j.at("K").get<int>();
    const auto& s = j.at("spec");
    block.spec.alpha = s.at("alpha").get<double>();
    block.spec.mu = s.at("mu").get<double>();
    block.spec.theta = s.at("theta").get<double>();
    block.spec.c = s.at("c").get<double>();
    block.spec.d = s.at("d").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed matrix record: ") + e.what());
  }
  block.stiffness = banded_from_json(j.at("stiffness"));
  block.mass = banded_from_json(j.at("mass"));
  if (block.stiffness.dim() != static_cast<std::size_t>(block.K) ||
      block.mass.dim() != static_cast<std::size_t>(block.K)) {
    throw DomainError("matrix record: dimension disagrees with K");
  }
  return block;
}

}  // namespace muntz::cli
