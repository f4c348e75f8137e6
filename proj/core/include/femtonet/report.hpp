#pragma once

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace femtonet {

/// Writes RFC 4180 rows: fields containing a comma, quote or line break are
/// quoted and embedded quotes doubled. Lines end with a bare newline.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(&out) {}

  void row(const std::vector<std::string>& fields);
  void row(std::initializer_list<std::string> fields) { row(std::vector<std::string>(fields)); }

 private:
  std::ostream* out_;
};

std::string csv_escape(const std::string& field);

/// Shortest round-trip decimal form ("nan" for NaN, "" never).
std::string format_number(double value);

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// `key = value` lines with keys padded to a common width.
void write_key_values(std::ostream& out, const KeyValues& values);

}  // namespace femtonet
