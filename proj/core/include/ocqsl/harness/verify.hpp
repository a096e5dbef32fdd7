#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ocqsl/numerics/tolerances.hpp"

namespace ocqsl::harness {

enum class CheckStatus { pass, fail, skip };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  std::size_t failures() const;
  bool ok() const { return failures() == 0; }
};

/// One line per check: status, name, measured value, threshold, detail.
std::string format_check(const CheckResult& check);

/// Oracle suite at small scale: closed forms against numerics, bound
/// validity, conservation laws. Each check compares against a field of
/// `tol`, so tightening a tolerance makes the matching check fail.
/// Lines are streamed to `out` as checks finish.
VerifyReport verify(bool quick, const Tolerances& tol = {}, std::ostream* out = nullptr);

}  // namespace ocqsl::harness
