#pragma once

// Output formats of the command-line tool: versioned JSON with numbers as
// decimal strings, and strict CSV (comma separated, LF line endings).

#include <string>
#include <vector>

#include "json.hpp"

#include "cyclespec/numeric.hpp"

namespace cyclespec::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "cycle-spectra/1";

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// Full-precision decimal string (round-trips at the value's precision).
std::string number(const Real& x);
/// `digits` significant digits.
std::string number(const Real& x, int digits);
/// Decimal digits written for a value of `bits` bits.
int full_digits(long bits);

std::string to_csv(const Table& table);
std::string to_json_text(const Json& doc);

}  // namespace cyclespec::cli
