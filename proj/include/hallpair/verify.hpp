#pragma once

#include <string>
#include <vector>

namespace hallpair {

/// One line of the built-in golden suite. Warn marks a reproduced,
/// documented discrepancy; only Fail makes cmd_verify exit nonzero.
struct CheckResult {
    enum class Status { Pass, Warn, Fail };
    std::string suite;
    std::string name;
    Status status = Status::Pass;
    std::string detail;
};

/// Runs the pinned example checks (optionally one suite only:
/// poincare, groups, stackfn, direct, degree2).
std::vector<CheckResult> run_verify(const std::string& only = "");

}  // namespace hallpair
