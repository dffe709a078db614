#pragma once

#include <string>
#include <vector>

namespace cubelab {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Runs every invariant group plus the reference-constant table; one result
// per group. Sized to finish within the default CLI budget.
std::vector<CheckResult> run_verify(int threads = 0);

}  // namespace cubelab
