#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cmclab {

/// One verification-suite criterion outcome. `detail` is deterministic for a
/// fixed seed (no timings inside); `seconds` is measured wall time, reported
/// separately so callers can enforce runtime budgets without perturbing the
/// reproducible report body.
struct CriterionResult {
    int number = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
    double limit_seconds = 0.0;
};

struct AcceptanceOptions {
    bool quick = false;            // trimmed sampling budgets, same checks
    std::uint64_t seed = 20250801;
    int threads = 2;
};

/// Runs the whole verification suite in criterion order.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

}  // namespace cmclab
