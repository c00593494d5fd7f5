#include "serialize.hpp"

#include <cmath>

namespace cyclespec::cli {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

int full_digits(long bits) { return static_cast<int>(std::ceil(static_cast<double>(bits) * 0.30102999566398120)) + 1; }

std::string number(const Real& x) { return x.to_string(); }

std::string number(const Real& x, int digits) { return x.to_string(digits); }

std::string to_csv(const Table& table) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out += ',';
      out += csv_field(cells[i]);
    }
    out += '\n';
  };
  line(table.columns);
  for (const auto& r : table.rows) line(r);
  return out;
}

std::string to_json_text(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace cyclespec::cli
