#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "chebproj/harness.hpp"

namespace chebproj {

/// One executed invariant check. status is "pass", "fail" or "skip";
/// value/tol hold the measured quantity and its pinned tolerance where the
/// check is quantitative.
struct VerifyCheck {
    std::string cell;
    std::string name;
    std::string status;
    double value = 0.0;
    double tol = 0.0;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool ok = true;
};

/// Runs every library invariant across the config grid (n capped at
/// verify.max_n). With verify.self_test enabled, additionally corrupts a
/// renormalization constant and demands that the partition-of-unity check
/// catches it.
VerifyReport run_verify_checks(const ExperimentConfig& cfg);

/// Driver: executes the checks, writes the JSON summary, logs one line per
/// check. Returns nonzero iff any check failed.
int run_verify_suite(const ExperimentConfig& cfg, std::ostream& log);

}  // namespace chebproj
