// Acceptance suite: runs the full verification battery and prints one
// pass/fail line per criterion. Exits nonzero if anything fails.

#include "nodal/battery.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

int main(int argc, char** argv) {
    nodal::RunConfig cfg;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc)
            cfg.seed = std::strtoull(argv[++i], nullptr, 10);
        else if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc)
            cfg.only = argv[++i];
    }

    nodal::BatteryReport report = nodal::verify_suite(cfg);
    for (const auto& c : report.checks)
        std::printf("[%s] %-18s (%7.2fs) %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                    c.runtime_s, c.details.c_str());
    std::printf("%s: %zu checks\n", report.pass ? "ALL PASS" : "FAILURES PRESENT",
                report.checks.size());
    return report.pass ? 0 : 1;
}
