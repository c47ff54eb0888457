#pragma once

#include <functional>
#include <stdexcept>

namespace vdx {

// Thrown when a bracketed search cannot certify an interior maximum.
struct optimizer_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Golden-section maximization of a unimodal f on [lo, hi].
// Iterates until the bracket width is <= tol, then returns the bracket
// midpoint. Throws optimizer_error if the value at an original endpoint
// exceeds the best interior probe, i.e. the bracket does not straddle an
// interior maximum. Throws std::invalid_argument on a bad bracket or tol.
double maximize_unimodal(const std::function<double(double)>& f,
                         double lo, double hi, double tol);

}  // namespace vdx
