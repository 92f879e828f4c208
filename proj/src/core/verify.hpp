#pragma once

#include <functional>
#include <string>

namespace dirac {

struct VerifyOptions {
  bool quick = false;  // reduced sample counts, wall-clock bounds not enforced
  int workers = 0;     // 0 = hardware concurrency
};

/// Runs the acceptance checks, emitting one PASS/FAIL line per criterion
/// (plus indented detail lines) through `sink`. Returns the number of failed
/// criteria. All seeds, tolerances, and sample counts are fixed here.
int run_acceptance_suite(const VerifyOptions& options,
                         const std::function<void(const std::string&)>& sink);

}  // namespace dirac
