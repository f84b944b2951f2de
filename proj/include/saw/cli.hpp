#pragma once

#include "saw/witness.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace saw::cli {

/// A named set as written in a set-definition file.
struct NamedSet {
  std::string name;
  SemiAlgebraicSet set;
};

/// Line-oriented format:
///   set NAME dim N
///   bound lo1 hi1 ... loN hiN      (optional)
///   point c1 ... cN                (optional, repeatable)
///   basic:                         (one per disjunct; no atoms means R^N)
///     eq <polynomial>
///     gt <polynomial>
/// `#` starts a comment. Errors are ParseError prefixed with "line L: ".
std::vector<NamedSet> parse_set_file(std::string_view text);
std::string write_set_file(const std::vector<NamedSet>& sets);

/// One expression per non-blank line, `#` comments. Names resolve in env.
std::vector<Expr> parse_expression_file(std::string_view text, const Environment& env, std::size_t n);

std::string read_file(const std::string& path);

enum Exit : int { kSuccess = 0, kFailure = 1, kUnknown = 2, kInputError = 3 };

struct RunConfig {
  std::string command;
  /// Expression file for classify/normalize/witness-*, set file for
  /// verify/connectivity.
  std::string input;
  /// Constant definitions for expression files.
  std::string sets;
  /// verify/connectivity: expression file applied to both sets (verify only).
  std::string expressions;
  /// verify: the two sets compared; connectivity: sets examined. Empty
  /// means the first two (verify) or all (connectivity).
  std::vector<std::string> names;
  std::size_t n = 3;
  std::uint64_t seed = 1;
  std::size_t cert_budget = 256;
  std::size_t sample_budget = 10000;
  std::optional<Rational> resolution;
  Rational margin{1, 2};
  /// Initial box is the cube [region_lo, region_hi]^n.
  Rational region_lo{-2};
  Rational region_hi{2};
  unsigned first_exponent = 1;
  unsigned last_exponent = 12;
  std::vector<Point> centers;
  std::size_t threads = 1;
  /// JSON report path; witness commands also write A and B beside it with
  /// extension ".sets". Empty means no files.
  std::string out;
};

struct RunResult {
  int exit_code = kSuccess;
  std::string text;
  nlohmann::ordered_json report;
  /// Witness commands: constants plus A and B in set-definition format.
  std::string sets_file;
};

/// Never throws; input errors become kInputError with the message in text.
RunResult run(const RunConfig& config);

/// Runs, prints text to `out`, and writes report files when configured.
int run_and_write(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace saw::cli
