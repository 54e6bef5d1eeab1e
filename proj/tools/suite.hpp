#pragma once

// Named check suites with expected verdicts, and their text / json reports.

#include "voacheck/voa.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace voacheck::cli {

struct SuiteConfig {
  std::string suite;
  std::string algebra = "builtin";  // builtin or a path to an algebra spec
  Scalar c = 0;
  bool c_given = false;
  int cutoff = 6;
  Scalar z = 1;
  std::vector<IntRange> window;  // x0, x1, x2; empty means the suite default
  std::optional<IntRange> weights;
  int degree = 2;
  std::string report = "text";
  std::uint64_t seed = 1;
};

/// Throws std::invalid_argument naming the offending field.
void validate_config(const SuiteConfig& cfg);

struct SuiteItem {
  std::string name;
  Verdict expected = Verdict::Pass;  // Fail means: must fail with a witness
  CheckReport report;
  std::function<std::string(int)> names;  // basis names for witness vectors
  double seconds = 0;

  bool ok() const;
};

struct SuiteResult {
  std::string suite;
  std::vector<SuiteItem> items;
  int pass = 0, fail = 0, inconclusive = 0;
  bool ok() const;
};

std::vector<std::string> suite_names();

/// Runs the named suite. Throws std::invalid_argument for an unknown suite or bad config,
/// ParseError / SpecError for a bad algebra file.
SuiteResult run_suite(const SuiteConfig& cfg);

/// Timings appear only in the text form, so the json form is a function of the config.
std::string text_report(const SuiteConfig& cfg, const SuiteResult& r);
std::string json_report(const SuiteConfig& cfg, const SuiteResult& r);

}  // namespace voacheck::cli
