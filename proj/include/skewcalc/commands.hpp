#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skewcalc/report.hpp"

namespace skewcalc {

struct SessionConfig {
  std::string command;
  std::vector<std::string> inputs;
  /// Extra positional operands (factors for `mul`).
  std::vector<std::string> operands;
  int max_degree = 4;
  int growth_N = 12;
  int degree_cap = 4;
  int max_rounds = 4;
  SubwordCaps subword;
  OutputFormat format = OutputFormat::Text;
  std::uint64_t seed = 1;
  /// Flags attached with provenance "user"; STRATIFORM takes a length as STRATIFORM(n).
  std::vector<std::string> asserts;
  /// Elements of F for divisor and controlling.
  std::vector<std::string> from;
  /// Stanza to operate on; the last algebra-like stanza when empty.
  std::string name;
};

struct RunResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

const std::vector<std::string>& command_names();

/// Dispatches one command. Never throws: errors become exit codes
/// (1 usage, 2 parse, 3 validation, 4 resource, 5 internal) and a message on `err`.
RunResult run(const SessionConfig& cfg);

/// Reads a whole file; USAGE when it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace skewcalc
