#include "cli/output_record.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace relaybound::cli {

namespace {

nlohmann::ordered_json value_to_json(const Value& v) {
  return std::visit(
      [](const auto& x) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
          return x;
        } else {
          return x;
        }
      },
      v);
}

Value value_from_json(const nlohmann::ordered_json& j) {
  if (j.is_null()) return std::monostate{};
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  return s;
}

nlohmann::ordered_json fields_to_json(const Fields& fields) {
  nlohmann::ordered_json obj = nlohmann::ordered_json::object();
  for (const auto& [key, value] : fields) obj[key] = value_to_json(value);
  return obj;
}

Fields fields_from_json(const nlohmann::ordered_json& j) {
  Fields fields;
  for (const auto& [key, value] : j.items()) fields.emplace_back(key, value_from_json(value));
  return fields;
}

}  // namespace

const Value* OutputRecord::output(const std::string& key) const {
  for (const auto& [k, v] : outputs) {
    if (k == key) return &v;
  }
  return nullptr;
}

double OutputRecord::output_number(const std::string& key) const {
  const Value* v = output(key);
  if (v == nullptr) throw std::out_of_range("no output field '" + key + "'");
  if (const auto* d = std::get_if<double>(v)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(v)) return static_cast<double>(*i);
  throw std::invalid_argument("output field '" + key + "' is not numeric");
}

nlohmann::ordered_json OutputRecord::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["inputs"] = fields_to_json(inputs);
  j["outputs"] = fields_to_json(outputs);
  j["metadata"] = fields_to_json(metadata);
  return j;
}

OutputRecord OutputRecord::from_json(const nlohmann::ordered_json& j) {
  OutputRecord r;
  r.command = j.at("command").get<std::string>();
  r.inputs = fields_from_json(j.at("inputs"));
  r.outputs = fields_from_json(j.at("outputs"));
  r.metadata = fields_from_json(j.at("metadata"));
  return r;
}

std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string format_value(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, double>) {
          return format_number(x);
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(x);
        } else {
          return x;
        }
      },
      v);
}

void write_table(std::ostream& out, const OutputRecord& record) {
  std::size_t width = 0;
  for (const Fields* f : {&record.inputs, &record.outputs, &record.metadata}) {
    for (const auto& kv : *f) width = std::max(width, kv.first.size());
  }
  auto section = [&](const char* title, const Fields& fields) {
    if (fields.empty()) return;
    out << "[" << title << "]\n";
    for (const auto& [key, value] : fields) {
      out << "  " << key << std::string(width - key.size() + 2, ' ') << format_value(value) << '\n';
    }
  };
  out << record.command << '\n';
  section("inputs", record.inputs);
  section("outputs", record.outputs);
  section("metadata", record.metadata);
}

void write_json(std::ostream& out, const std::vector<OutputRecord>& records) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : records) arr.push_back(r.to_json());
  out << arr.dump(2) << '\n';
}

}  // namespace relaybound::cli
