#pragma once

// Machine-readable command output. JSON: one object per record, keys sorted,
// newline-terminated. CSV: header row, then one row per record, with
// "parameters." / "results." column prefixes.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <variant>

namespace rowcover {

inline constexpr const char* kSchemaVersion = "1";
inline constexpr int kSignificantDigits = 12;

/// monostate marks a value that is undefined for the given inputs (null).
using Value = std::variant<std::monostate, std::int64_t, std::uint64_t, double, std::string>;

struct OutputRecord {
  std::string command;
  std::map<std::string, Value> parameters;
  std::map<std::string, Value> results;
  std::string schema_version = kSchemaVersion;
};

/// x rounded to kSignificantDigits significant digits.
double round_significant(double x);

/// Text of one value as it appears in both encodings.
std::string format_value(const Value& value);

std::string to_json(const OutputRecord& record);

/// Records must share one key set; the header comes from the first record.
std::string to_csv(std::span<const OutputRecord> records);

}  // namespace rowcover
