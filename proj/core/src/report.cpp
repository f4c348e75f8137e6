#include "femtonet/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

namespace femtonet {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) *out_ << ',';
    *out_ << csv_escape(fields[i]);
  }
  *out_ << '\n';
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

void write_key_values(std::ostream& out, const KeyValues& values) {
  std::size_t width = 0;
  for (const auto& [k, v] : values) width = std::max(width, k.size());
  for (const auto& [k, v] : values) {
    out << k << std::string(width - k.size(), ' ') << " = " << v << '\n';
  }
}

}  // namespace femtonet
