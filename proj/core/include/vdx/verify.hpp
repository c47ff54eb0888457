#pragma once

#include <functional>
#include <string>
#include <vector>

// Self-check suite: every closed-form result is exercised against an
// independent oracle (series, quadrature, dense trapezoid, repeated
// multiplication), and every claimed property (brackets, monotonicity,
// symmetry, bounds) is probed on fixed grids.

namespace vdx {

struct CheckResult {
    std::string name;
    double measured;   // error magnitude, or violation margin (0 = clean)
    double tolerance;  // after tol_scale
    bool pass;
};

struct VerifyOptions {
    // Multiplies every tolerance; > 1 loosens, < 1 tightens.
    double tol_scale = 1.0;
    // erf used by the numeric sigma* search inside the closed-vs-numeric
    // check. Defaults to the library erf; tests substitute a degraded erf
    // to confirm the check actually has teeth.
    std::function<double(double)> erf_fn;
};

std::vector<CheckResult> run_verify(const VerifyOptions& opt = {});

bool all_passed(const std::vector<CheckResult>& results);

// One line per check: PASS/FAIL, name, measured, tolerance. Throws io_error
// if the file cannot be written.
void write_verify_report(const std::vector<CheckResult>& results, const std::string& path);

}  // namespace vdx
