#pragma once

// Machine-readable output: CSV tables and JSON records with every double
// written at 17 significant digits, plus the matrix dump format.

#include <string>
#include <vector>

#include <json.hpp>

#include "muntz/assembly.hpp"

namespace muntz::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

std::string format_double(double v);

/// JSON text with deterministic key order and %.17g numbers.
std::string dump_json(const Json& value, int indent = 2);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;  // scalars only
};

std::string to_csv(const Table& table);
Json rows_to_json(const Table& table);

Json config_to_json(const ProblemConfig& cfg);
ProblemConfig config_from_json(const nlohmann::json& j);

Json banded_to_json(const SymBanded& A);
SymBanded banded_from_json(const nlohmann::json& j);

/// Matrix dump of a block: schema, command, config, n, K, spec, stiffness, mass.
Json block_to_json(const RadialBlock& block, const ProblemConfig& cfg);
RadialBlock block_from_json(const nlohmann::json& j);

}  // namespace muntz::cli
