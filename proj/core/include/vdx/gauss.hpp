#pragma once

// Standard-normal special functions and the entropy of a clipped Gaussian.
// All functions are pure and safe for concurrent use.

namespace vdx {

// Closed clipping interval [lo, hi], lo < hi.
struct ClipBounds {
    double lo;
    double hi;
};

inline constexpr double sqrt_two_pi_e = 4.132731354122492938;  // sqrt(2*pi*e)
inline constexpr double log_sqrt_two_pi_e = 1.418938533204672742;  // ln(sqrt(2*pi*e))

// Standard normal density (1/sqrt(2*pi)) exp(-x^2/2).
double std_normal_pdf(double x);

// Error function, rational Chebyshev approximation after W. J. Cody,
// Math. Comp. 23 (1969) 631-637 (SPECFUN coefficient set).
// Max absolute error is below 1e-15 everywhere, comfortably inside the
// 1e-7 budget this library documents for downstream tolerances.
double erf(double x);

// Complementary error function, same kernel. Underflows to 0 for x > ~26.5,
// which keeps std_normal_cdf positive down to arguments near -37.
double erfc(double x);

// Phi(x) = 0.5 * erfc(-x / sqrt(2)). Strictly inside (0,1) for |x| <~ 37;
// saturates to 0/1 beyond that in double precision.
double std_normal_cdf(double x);

// P(lo <= X <= hi) for X ~ N(mu, sigma^2). Uses complementary tails when the
// interval sits entirely on one side of mu, so far-tail masses keep relative
// accuracy instead of cancelling. Throws std::invalid_argument if sigma <= 0
// or lo > hi.
double gaussian_interval_mass(double mu, double sigma, double lo, double hi);

// Entropy of the clipped variable clip(X, [a,b]), X ~ N(mu, sigma^2): the
// differential part over (a,b) plus the discrete point masses at the bounds,
//   H = Z ln(sqrt(2 pi e) sigma) + (alpha phi(alpha) - beta phi(beta))/2
//       - P1 ln P1 - P2 ln P2,
// alpha=(a-mu)/sigma, beta=(b-mu)/sigma, Z=Phi(beta)-Phi(alpha),
// P1=Phi(alpha), P2=1-Phi(beta), with p ln p := 0 at p = 0.
// Throws std::invalid_argument if sigma <= 0 or bounds.lo >= bounds.hi.
double clipped_gaussian_entropy(double mu, double sigma, ClipBounds bounds);

}  // namespace vdx
