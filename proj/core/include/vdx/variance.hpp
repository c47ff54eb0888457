#pragma once

// Closed-form and numeric optimal exploration variance for a zero-mean
// Gaussian policy rewarded on an interval [d, d+w] offset from the mean,
// plus the value -> variance inverse mapping and batch success probability.

namespace vdx {

// Rewarded interval at distance d > 0 from the policy mean, width w > 0.
struct RewardInterval {
    double d;
    double w;
};

// Search bracket for the optimal sigma, 0 < lo < hi.
struct SigmaBracket {
    double lo;
    double hi;
};

struct BatchSuccess {
    double exact;   // 1 - (1 - v)^n
    double linear;  // n * v
};

// Probability that one draw from N(0, sigma^2) lands in [d, d+w].
// Throws std::invalid_argument if sigma <= 0 or the interval is invalid.
double policy_value(double sigma, RewardInterval interval);

// Maximizer of policy_value in closed form:
//   sigma* = sqrt((2 d w + w^2) / (2 ln(1 + w/d))).
// Uses log1p so the sigma* -> d limit survives w/d down to ~1e-15.
double optimal_sigma_closed(RewardInterval interval);

// Default bracket [0.9 d, 1.1 (d+w)] around the guaranteed interior maximum.
SigmaBracket default_sigma_bracket(RewardInterval interval);

// Golden-section maximization of policy_value over the default bracket,
// terminating at bracket width <= tol. Throws optimizer_error if the
// maximum sits at a bracket endpoint.
double optimal_sigma_numeric(RewardInterval interval, double tol);

// sigma = w / (sqrt(2 pi e) * max(v, value_floor)).
// Throws std::invalid_argument if w <= 0, value_floor < 0, or v <= 0 while
// value_floor == 0.
double inverse_value_sigma(double w, double v, double value_floor);

// Probability of at least one success in n independent trials at
// per-trial probability v, alongside the linear approximation n*v.
// exact is computed as -expm1(n*log1p(-v)) and clamped to <= linear so the
// documented ordering survives rounding at n = 1. Throws
// std::invalid_argument unless 0 <= v <= 1 and n >= 1.
BatchSuccess batch_success_probability(double v, long n);

}  // namespace vdx
