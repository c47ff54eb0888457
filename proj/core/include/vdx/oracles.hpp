#pragma once

#include <cstddef>

#include "vdx/mdp.hpp"

// Slow reference implementations used to cross-check the fast library code.
// Deliberately built on different algorithms (series, fixed-step composite
// Simpson, dense trapezoid, repeated multiplication) in long double so an
// implementation bug cannot cancel out of both sides of a comparison.

namespace vdx::oracle {

// Maclaurin series for |x| <= 3; complementary tail by composite-Simpson
// quadrature of exp(-t^2) beyond. Absolute error well under 1e-12.
double erf_ref(double x);

// Phi via erf_ref.
double cdf_ref(double x);

// P(lo <= X <= hi), X ~ N(mu, sigma^2), by composite Simpson over the
// integration range intersected with mu +- 45 sigma.
double interval_mass_ref(double mu, double sigma, double lo, double hi);

// Clipped-Gaussian entropy: -p ln p integrated over the interior on a fixed
// fine grid plus the exact point-mass terms from cdf_ref.
double clipped_entropy_ref(double mu, double sigma, double a, double b);

// Profile value integral by dense trapezoid rule at `points` uniform nodes.
double mdp_value_ref(double sigma, double d, const QProfile& profile,
                     std::size_t points = 100001);

// base^n by repeated long double multiplication, n >= 0.
double pow_ref(double base, long n);

// sqrt((2 d w + w^2) / (2 ln(1 + w/d))) evaluated in long double.
double optimal_sigma_closed_ref(double d, double w);

}  // namespace vdx::oracle
