#pragma once

// Subcommands of the cycle-spectra tool. Each command returns both a JSON
// document and a table; the --format flag picks which one is written.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "serialize.hpp"

#include "cyclespec/inner.hpp"

namespace cyclespec::cli {

struct AlphaValue {
  Rational re;
  Rational im;
  std::string text;
};

/// "p/q", "1.25", "re,im" or "re+imi" (imaginary unit suffix).
AlphaValue parse_alpha(std::string_view text);

enum class Format { kJson, kCsv };

struct RunConfig {
  std::string command;
  AlphaValue alpha;
  bool has_alpha = false;
  std::vector<long> n;
  long n_max = 0;
  long bits = 3322;
  Method method = Method::kAuto;
  Format format = Format::kJson;
  std::string out;
  long j = 0;
  bool normalize = false;
  std::string what;
  long samples = 201;
  std::string gen_file;
  long oracle_max_n = 64;
};

struct Output {
  Json json;
  Table table;
  /// Nonzero when the command completed but a check failed (verify).
  int status = 0;
};

Output cmd_constants(const RunConfig& config);
Output cmd_spectrum(const RunConfig& config);
Output cmd_outlier(const RunConfig& config);
Output cmd_eigvec(const RunConfig& config);
Output cmd_table1(const RunConfig& config);
Output cmd_table2(const RunConfig& config);
Output cmd_plotdata(const RunConfig& config);
Output cmd_verify(const RunConfig& config);

Output dispatch(const RunConfig& config);

/// Full command line handling; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cyclespec::cli
