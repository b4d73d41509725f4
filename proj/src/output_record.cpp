#include "rowcover/output_record.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <json.hpp>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace rowcover {

namespace {

nlohmann::json to_json_value(const Value& value) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          return round_significant(v);
        } else {
          return v;
        }
      },
      value);
}

std::string csv_escape(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> column_names(const OutputRecord& record) {
  std::vector<std::string> names{"command"};
  for (const auto& [key, _] : record.parameters) names.push_back("parameters." + key);
  for (const auto& [key, _] : record.results) names.push_back("results." + key);
  names.emplace_back("schema_version");
  return names;
}

}  // namespace

double round_significant(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.*g", kSignificantDigits, x);
  return std::strtod(buffer, nullptr);
}

std::string format_value(const Value& value) {
  if (const auto* text = std::get_if<std::string>(&value)) return *text;
  return to_json_value(value).dump();
}

std::string to_json(const OutputRecord& record) {
  nlohmann::json object;
  object["command"] = record.command;
  object["schema_version"] = record.schema_version;
  object["parameters"] = nlohmann::json::object();
  object["results"] = nlohmann::json::object();
  for (const auto& [key, value] : record.parameters) object["parameters"][key] = to_json_value(value);
  for (const auto& [key, value] : record.results) object["results"][key] = to_json_value(value);
  return object.dump() + "\n";
}

std::string to_csv(std::span<const OutputRecord> records) {
  if (records.empty()) return {};
  const std::vector<std::string> header = column_names(records.front());
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const OutputRecord& record : records) {
    if (column_names(record) != header) throw std::logic_error("CSV records differ in key set");
    out << csv_escape(record.command);
    for (const auto& [_, value] : record.parameters) out << ',' << csv_escape(format_value(value));
    for (const auto& [_, value] : record.results) out << ',' << csv_escape(format_value(value));
    out << ',' << csv_escape(record.schema_version) << '\n';
  }
  return out.str();
}

}  // namespace rowcover
