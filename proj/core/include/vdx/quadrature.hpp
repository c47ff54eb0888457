#pragma once

#include <functional>

namespace vdx {

// Adaptive Simpson integration of f over [a, b] to absolute tolerance
// abs_tol (Lyness halving criterion, Richardson-corrected). Recursion is
// depth-capped; the cap is generous enough that hitting it means the
// requested tolerance is below what double precision supports for the
// integrand, in which case the best available estimate is returned.
double integrate_adaptive_simpson(const std::function<double(double)>& f,
                                  double a, double b, double abs_tol);

}  // namespace vdx
