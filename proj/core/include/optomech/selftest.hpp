#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace optomech {

struct SelftestCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Bare-cavity analytic checks, the cubic oracle, closed form vs linear
/// system, and the scaled time-domain crosscheck. Prints one line per check
/// to `log` and returns the results.
std::vector<SelftestCheck> run_selftest(std::ostream& log);

}  // namespace optomech
