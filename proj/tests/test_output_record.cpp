#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "rowcover/output_record.hpp"

using namespace rowcover;

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> cells;
  std::stringstream stream(line);
  for (std::string cell; std::getline(stream, cell, sep);) cells.push_back(cell);
  return cells;
}

OutputRecord sample_record() {
  OutputRecord record{"bounds", {{"theta", 0.5}, {"n", std::uint64_t{3}}}, {}};
  record.results["exact"] = 22.0 / 7.0;
  record.results["digamma_bound"] = std::monostate{};
  record.results["flag"] = std::int64_t{1};
  record.results["tiny"] = 1e-300 / 3.0;
  return record;
}

}  // namespace

TEST_SUITE("output_record") {

TEST_CASE("twelve significant digits") {
  CHECK(round_significant(22.0 / 7.0) == 3.14285714286);
  CHECK(round_significant(0.0) == 0.0);
  CHECK(round_significant(1.0) == 1.0);
  CHECK(format_value(Value{22.0 / 7.0}) == "3.14285714286");
  CHECK(format_value(Value{std::uint64_t{5}}) == "5");
  CHECK(format_value(Value{std::monostate{}}) == "null");
}

TEST_CASE("JSON is one sorted object per line") {
  const std::string text = to_json(sample_record());
  CHECK(text.back() == '\n');
  CHECK(text.find('\n') == text.size() - 1);
  CHECK(text.rfind("{\"command\":\"bounds\",\"parameters\":{\"n\":3,\"theta\":0.5},\"results\":{", 0) == 0);
  const auto parsed = nlohmann::json::parse(text);
  CHECK(parsed["schema_version"] == kSchemaVersion);
  CHECK(parsed["results"]["digamma_bound"].is_null());
  CHECK(parsed["results"]["exact"].get<double>() == 3.14285714286);
}

TEST_CASE("JSON and CSV carry the same keys and values") {
  const OutputRecord record = sample_record();
  const auto json = nlohmann::json::parse(to_json(record));
  const std::vector<OutputRecord> records{record, record};
  const auto lines = split(to_csv(records), '\n');
  REQUIRE(lines.size() == 3);
  const auto header = split(lines[0], ',');
  const auto row = split(lines[1], ',');
  CHECK(lines[1] == lines[2]);
  REQUIRE(header.size() == row.size());
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string& column = header[i];
    nlohmann::json expected;
    if (column == "command" || column == "schema_version") {
      expected = json[column];
      CHECK(row[i] == expected.get<std::string>());
      continue;
    }
    const auto dot = column.find('.');
    REQUIRE(dot != std::string::npos);
    expected = json[column.substr(0, dot)][column.substr(dot + 1)];
    CAPTURE(column);
    CHECK(row[i] == expected.dump());
  }
  CHECK(header.size() == 2 + json["parameters"].size() + json["results"].size());
}

TEST_CASE("CSV quoting and key-set checks") {
  OutputRecord a{"omf", {{"out", std::string("a,b.txt")}}, {{"x", 1.0}}};
  const std::vector<OutputRecord> one{a};
  CHECK(to_csv(one) == "command,parameters.out,results.x,schema_version\nomf,\"a,b.txt\",1.0,1\n");
  OutputRecord b{"omf", {{"other", 1.0}}, {{"x", 1.0}}};
  const std::vector<OutputRecord> mixed{a, b};
  CHECK_THROWS(to_csv(mixed));
}

}  // TEST_SUITE
