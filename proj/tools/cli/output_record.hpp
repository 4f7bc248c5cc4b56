#pragma once

#include <cstdint>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace relaybound::cli {

/// A scalar output cell; monostate renders as empty (CSV) or null (JSON).
using Value = std::variant<std::monostate, double, std::int64_t, bool, std::string>;

/// Ordered key/value pairs; order is preserved in every output format.
using Fields = std::vector<std::pair<std::string, Value>>;

/// One command result. Infinite doubles serialise as the string "inf".
struct OutputRecord {
  std::string command;
  Fields inputs;
  Fields outputs;
  Fields metadata;

  /// nullptr when absent.
  [[nodiscard]] const Value* output(const std::string& key) const;
  /// Throws std::out_of_range if absent, std::invalid_argument if not numeric.
  [[nodiscard]] double output_number(const std::string& key) const;

  [[nodiscard]] nlohmann::ordered_json to_json() const;
  static OutputRecord from_json(const nlohmann::ordered_json& j);

  bool operator==(const OutputRecord&) const = default;
};

inline constexpr const char* kSweepHeader = "snr1,snr2,r0,cutset,theorem1,prop5,gap";

/// 12 significant digits; "inf" for infinity.
std::string format_number(double x);
std::string format_value(const Value& v);

void write_table(std::ostream& out, const OutputRecord& record);
/// Always a JSON array, one object per record.
void write_json(std::ostream& out, const std::vector<OutputRecord>& records);

}  // namespace relaybound::cli
