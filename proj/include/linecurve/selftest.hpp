#ifndef LINECURVE_SELFTEST_HPP
#define LINECURVE_SELFTEST_HPP

#include <string>

// Embedded invariant suite: the convention audits with their fault-injection
// sensitivity hooks (LINECURVE_DEBUG_FLIP), the cone-circle laws, the shape
// operator oracle agreement, and the closedness identity of normal
// congruences. Runs in a few seconds; exit contract is pass/fail only.

namespace linecurve::selftest {

struct Result {
  bool ok = false;
  std::string table;  // one PASS/FAIL line per audit
};

/// Reads the fault-injection environment hook, runs every audit, and
/// reports. Never throws; an audit that errors out is a failure.
Result run();

}  // namespace linecurve::selftest

#endif
