// Full check suite at reference scale: one line per criterion, nonzero exit
// if any criterion fails.  Expect several minutes of Monte Carlo work.
#include <cstdio>

#include "winding_atlas/validate.hpp"

int main() {
    watlas::validate::McScale scale;  // reference scale: defaults
    const auto criteria = watlas::validate::full_suite(scale);
    bool all_passed = true;
    for (const auto& cr : criteria) {
        const bool ok = cr.passed();
        all_passed = all_passed && ok;
        std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", cr.id.c_str(), cr.summary.c_str());
        if (!ok) {
            for (const auto& c : cr.checks) {
                if (!c.passed)
                    std::printf("  failed check '%s': observed %.12g, expected %.12g, "
                                "tolerance %.12g\n",
                                c.name.c_str(), c.observed, c.expected, c.tolerance);
            }
        }
        std::fflush(stdout);
    }
    return all_passed ? 0 : 1;
}
