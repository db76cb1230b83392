#pragma once

#include <string>
#include <vector>

#include "cayley/budget.hpp"

namespace cayley {

struct CheckResult {
    std::string name;
    std::string params;
    bool pass = false;
    std::string detail;
};

/// Run one invariant suite: core, spectra, density, lattice, stats, ihara,
/// or all. Each check is one line of the report.
std::vector<CheckResult> verify_suite(const std::string& suite, WorkBudget& budget, int threads);

} // namespace cayley
