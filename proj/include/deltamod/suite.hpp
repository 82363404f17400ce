#pragma once

#include <string>
#include <vector>

#include "deltamod/matrix_io.hpp"

namespace deltamod {

enum class SuiteScope { kFast, kFull };

/// "fast" or "full". Throws ParseError.
SuiteScope parse_suite_scope(const std::string& text);

struct SuiteCheck {
  std::string name;
  bool passed = false;
  double elapsed_ms = 0;
  std::string detail;
};

struct VerifySuiteReport {
  std::vector<SuiteCheck> checks;
  bool all_passed = false;
};

/// Runs the built-in verification battery. Failures and exceptions become
/// failed checks; nothing is thrown.
VerifySuiteReport verify_suite(SuiteScope scope);

/// Machine-readable form. Elapsed times are left out so the bytes depend only
/// on the results.
Json suite_to_json(const VerifySuiteReport& report);

}  // namespace deltamod
