#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace orbitkit {

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;  // values and tolerances, or the failure reason
};

/// The reproduction table: every exact constant and property bundle the
/// library is expected to reproduce, each checked at its stated tolerance.
/// Deterministic (fixed RNG seeds).
std::vector<CheckResult> run_repro_checks();

/// Prints one pass/fail line per check; returns the number of failures.
int print_repro_report(std::ostream& out);

}  // namespace orbitkit
