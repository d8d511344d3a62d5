#ifndef NODAL_BATTERY_HPP
#define NODAL_BATTERY_HPP

#include "nodal/tolerances.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nodal {

struct RunConfig {
    std::uint64_t seed = 20250809;
    std::string only;  // substring filter on check names; empty = all
    Tolerances tol;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    double margin = 0;      // check-specific slack (>= 0 when passing)
    double runtime_s = 0;
    std::string details;
};

struct BatteryReport {
    std::vector<CheckResult> checks;
    bool pass = false;  // conjunction over all executed checks
};

// Runs the full verification battery (or the filtered subset) with
// per-check seeds derived from the master seed.
BatteryReport verify_suite(const RunConfig& config);

} // namespace nodal

#endif
