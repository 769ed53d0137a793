#pragma once

// Verification suites: the acceptance criteria plus the per-module invariant
// bundles.  `srso3 check` and the acceptance test binary both run these.

#include <cstdint>
#include <string>
#include <vector>

namespace srso3::checks {

struct CheckResult {
    std::string suite;
    std::string id;
    bool pass = false;
    // pass is `value <= threshold` or `value > threshold` depending on the
    // check's direction; both are reported for the record stream.
    double value = 0.0;
    double threshold = 0.0;
    double seconds = 0.0;
    std::string detail;
};

struct CheckOptions {
    double tol_scale = 1.0; // multiplies thresholds (tolerance profile)
    std::uint64_t seed = 20250809;
    int jobs = 1;
};

// default | strict | loose -> threshold scale 1.0 | 0.5 | 10.0
double profile_scale(const std::string& name);

// "acceptance", "so3", "geodesic", "sphere", "cut-locus", "distance", "kernels"
std::vector<std::string> suite_names();

std::vector<CheckResult> run_suite(const std::string& name, const CheckOptions& opt = {});
std::vector<CheckResult> run_all(const CheckOptions& opt = {});

bool all_passed(const std::vector<CheckResult>& results);

} // namespace srso3::checks
