#pragma once

#include <string>
#include <vector>

namespace omech {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Built-in oracle and invariant checks behind `omech check`: closed-form
/// Gaussian states, Lyapunov solve against the time-integration oracle and
/// the Schur backend, physicality and detuning symmetry on a reduced grid.
std::vector<CheckResult> run_self_checks();

}  // namespace omech
