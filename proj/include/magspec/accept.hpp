#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace magspec {

struct AcceptOptions {
  bool fast = false;      // closed-form-only subset (skips FEM criteria)
  double perturb = 0.0;   // inflate computed eigenvalues (negative control)
};

struct CriterionResult {
  int index;
  std::string name;
  bool pass;
  bool skipped;
  std::string detail;
  double seconds;
};

/// Runs the full verification suite. Streams one "PASS/FAIL criterion N"
/// line per criterion to `live` when given. Returns every result; callers
/// decide the exit status from the pass flags.
std::vector<CriterionResult> run_acceptance(const AcceptOptions& opt,
                                            std::ostream* live = nullptr);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace magspec
