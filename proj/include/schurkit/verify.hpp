#pragma once
//
// Randomized invariant suite behind `schurkit verify`. Each check draws
// fresh instances, measures a residual, and compares against a fixed
// tolerance. --perturb injects a deliberate error into the decomposition
// middle factor so the suite can demonstrate that it actually rejects.
//

#include <cstdint>
#include <vector>

#include "schurkit/check.hpp"

namespace schurkit {

struct VerifyOptions {
    std::vector<int> sizes = {2, 3, 5};
    std::uint64_t seed = 1;
    int repetitions = 3;
    double perturb = 0.0;
};

std::vector<CheckResult> run_invariant_suite(const VerifyOptions& opts);

} // namespace schurkit
