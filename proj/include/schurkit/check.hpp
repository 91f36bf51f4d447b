#pragma once

#include <string>
#include <vector>

namespace schurkit {

// One named invariant check with its measured value and the tolerance it
// was held against.
struct CheckResult {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

inline bool all_pass(const std::vector<CheckResult>& checks) {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

} // namespace schurkit
