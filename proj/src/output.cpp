#include "prfauth/output.hpp"

#include <charconv>
#include <cmath>

#include <json.hpp>

namespace prfauth {

namespace {

constexpr double kLinearFloor = 1e-300;

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

void OutputRecord::param(std::string key, double value) { param(std::move(key), format_number(value)); }

void OutputRecord::result(std::string key, double value) {
  summary.emplace_back(std::move(key), format_number(value));
}

void add_probability_columns(std::vector<std::string>& columns, const std::string& name) {
  columns.push_back("log2_" + name);
  columns.push_back(name);
}

void append_probability(std::vector<Cell>& row, const LogProb& p) {
  row.emplace_back(p.log2());
  const double linear = p.linear();
  if (p.representable() && linear > kLinearFloor) {
    row.emplace_back(linear);
  } else {
    row.emplace_back(std::nullopt);
  }
}

void write_csv(std::ostream& os, const OutputRecord& record) {
  os << "# schema_version: " << record.schema_version << '\n';
  os << "# command: " << record.command << '\n';
  for (const auto& [k, v] : record.parameters) os << "# param " << k << '=' << v << '\n';
  for (const auto& [k, v] : record.summary) os << "# result " << k << '=' << v << '\n';
  for (std::size_t i = 0; i < record.columns.size(); ++i) {
    os << (i ? "," : "") << csv_escape(record.columns[i]);
  }
  os << '\n';
  for (const auto& row : record.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      if (row[i]) os << format_number(*row[i]);
    }
    os << '\n';
  }
}

void write_json(std::ostream& os, const OutputRecord& record) {
  nlohmann::ordered_json j;
  j["schema_version"] = record.schema_version;
  j["command"] = record.command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : record.parameters) params[k] = v;
  j["parameters"] = params;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  for (const auto& [k, v] : record.summary) summary[k] = v;
  j["summary"] = summary;
  j["columns"] = record.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : record.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < record.columns.size(); ++i) {
      // JSON has no infinities; those cells go out as strings.
      if (!row[i]) {
        r[record.columns[i]] = nullptr;
      } else if (!std::isfinite(*row[i])) {
        r[record.columns[i]] = format_number(*row[i]);
      } else {
        r[record.columns[i]] = *row[i];
      }
    }
    rows.push_back(r);
  }
  j["rows"] = rows;
  os << j.dump(2) << '\n';
}

}  // namespace prfauth
