#include <doctest.h>

#include <cmath>
#include <json.hpp>
#include <limits>
#include <sstream>
#include <string>

#include "prfauth/output.hpp"

using namespace prfauth;

TEST_CASE("number formatting") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(100.0) == "100");
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(-40.242588455115325) == "-40.242588455115325");
  CHECK(format_number(1e-300) == "1e-300");
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
  for (double x : {1.0 / 3.0, 2.0 / 7.0 * 1e-200, 6.02214076e23}) CHECK(std::stod(format_number(x)) == x);
}

TEST_CASE("probability cells") {
  std::vector<std::string> cols;
  add_probability_columns(cols, "pmd");
  CHECK(cols == std::vector<std::string>{"log2_pmd", "pmd"});

  std::vector<Cell> row;
  append_probability(row, LogProb::from_log2(-40.0));
  REQUIRE(row.size() == 2);
  CHECK(*row[0] == -40.0);
  CHECK(*row[1] == doctest::Approx(std::exp2(-40.0)).epsilon(1e-15));
  CHECK(std::log2(*row[1]) == doctest::Approx(*row[0]).epsilon(1e-14));

  row.clear();
  append_probability(row, LogProb::from_log2(-1200.0));
  CHECK(*row[0] == -1200.0);
  CHECK_FALSE(row[1].has_value());

  row.clear();
  append_probability(row, LogProb::zero());
  CHECK(std::isinf(*row[0]));
  CHECK_FALSE(row[1].has_value());
}

namespace {

OutputRecord sample_record() {
  OutputRecord r;
  r.command = "pmd";
  r.param("w", 341.0);
  r.param("note", "a,b");
  r.result("shift_db", 0.48);
  r.columns = {"w", "log2_pmd", "pmd"};
  r.rows.push_back({341.0, -127.98, std::nullopt});
  r.rows.push_back({1.0, -std::numeric_limits<double>::infinity(), 0.0});
  return r;
}

}  // namespace

TEST_CASE("csv layout") {
  std::ostringstream os;
  write_csv(os, sample_record());
  CHECK(os.str() ==
        "# schema_version: prfauth-output/1\n"
        "# command: pmd\n"
        "# param w=341\n"
        "# param note=a,b\n"
        "# result shift_db=0.48\n"
        "w,log2_pmd,pmd\n"
        "341,-127.98,\n"
        "1,-inf,0\n");
}

TEST_CASE("json layout") {
  std::ostringstream os;
  write_json(os, sample_record());
  const auto j = nlohmann::json::parse(os.str());
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["command"] == "pmd");
  CHECK(j["parameters"]["w"] == "341");
  CHECK(j["summary"]["shift_db"] == "0.48");
  CHECK(j["columns"].size() == 3);
  CHECK(j["rows"][0]["log2_pmd"] == -127.98);
  CHECK(j["rows"][0]["pmd"].is_null());
  CHECK(j["rows"][1]["log2_pmd"] == "-inf");
}
