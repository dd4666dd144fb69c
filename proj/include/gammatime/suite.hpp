#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gammatime/harness.hpp"

namespace gammatime {

// A deterministic comparison: pass iff lower <= value <= upper.  Either
// bound may be infinite.
struct Measurement {
  std::string label;
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool pass = false;
};

Measurement within(std::string label, double value, double target, double tol);
Measurement at_most(std::string label, double value, double bound);
Measurement between(std::string label, double value, double lower, double upper);

struct CheckResult {
  std::string name;
  std::string title;
  std::vector<McReport> reports;
  std::vector<Measurement> measurements;
  bool pass = false;
};

struct SuiteOptions {
  std::uint64_t seed = 42;
  unsigned jobs = 1;
  std::size_t reps = 0;  // 0 keeps each check's own replicate count
  std::size_t terms = 200;
};

// Names of the sixteen checks in the default manifest, in order.
const std::vector<std::string>& default_manifest();
// Every check run_check accepts (the default manifest plus extras).
std::vector<std::string> registered_checks();
std::string check_title(const std::string& name);

// ConfigError for an unknown name.
CheckResult run_check(const std::string& name, const SuiteOptions& options);

// One JSON object per line; no timings, so equal inputs give equal bytes.
std::string report_line(const CheckResult& result);

struct SuiteResult {
  std::vector<CheckResult> checks;
  bool pass = true;
};

// Runs the manifest in order, streaming report lines to `sink` when given.
// Every name is validated before the first check runs.
SuiteResult run_suite(std::span<const std::string> manifest, const SuiteOptions& options, std::ostream* sink = nullptr);

// "default", or a file with one check name per line ('#' comments).
std::vector<std::string> load_manifest(const std::string& suite);

}  // namespace gammatime
