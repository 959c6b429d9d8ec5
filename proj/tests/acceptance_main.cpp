// Acceptance suite: one pass/fail line per reference check, each run at
// its stated truncation. Exit status is nonzero when anything fails.

#include <cstdio>

#include "k3e/verify.hpp"

int main() {
    auto results = k3e::run_acceptance();
    bool all = true;
    int idx = 0;
    for (auto& r : results) {
        ++idx;
        std::printf("[%2d] %-68s %s (%.2fs)%s%s\n", idx, r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.seconds,
                    r.detail.empty() ? "" : "  -- ", r.detail.c_str());
        all = all && r.pass;
    }
    std::printf("%s\n", all ? "acceptance: all criteria hold" : "acceptance: FAILURE");
    return all ? 0 : 1;
}
