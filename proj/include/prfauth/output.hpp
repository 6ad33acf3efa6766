#ifndef PRFAUTH_OUTPUT_HPP
#define PRFAUTH_OUTPUT_HPP

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "prfauth/log_prob.hpp"

namespace prfauth {

inline constexpr const char* kSchemaVersion = "prfauth-output/1";

using Cell = std::optional<double>;  // empty renders as a blank CSV field / JSON null

/// Self-describing table: every output carries the schema, the command and
/// the full parameter set that produced it.
struct OutputRecord {
  std::string schema_version = kSchemaVersion;
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  // Derived scalars that are not per-row (e.g. an estimated shift).
  std::vector<std::pair<std::string, std::string>> summary;

  void param(std::string key, std::string value) { parameters.emplace_back(std::move(key), std::move(value)); }
  void param(std::string key, double value);
  void result(std::string key, double value);
};

/// Shortest round-trip decimal, '.' separator, independent of locale.
std::string format_number(double x);

/// Appends `log2_<name>` and `<name>` column names.
void add_probability_columns(std::vector<std::string>& columns, const std::string& name);
/// Appends log2 and, when the value exceeds 1e-300, the linear probability.
void append_probability(std::vector<Cell>& row, const LogProb& p);

/// '#'-prefixed metadata lines, then an RFC 4180 header and rows.
void write_csv(std::ostream& os, const OutputRecord& record);
void write_json(std::ostream& os, const OutputRecord& record);

}  // namespace prfauth

#endif  // PRFAUTH_OUTPUT_HPP
