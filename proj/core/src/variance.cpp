#include "vdx/variance.hpp"

#include <cmath>
#include <stdexcept>

#include "vdx/gauss.hpp"
#include "vdx/optimize.hpp"

namespace vdx {

namespace {

void check_interval(RewardInterval interval) {
    if (!(interval.d > 0.0) || !(interval.w > 0.0))
        throw std::invalid_argument("RewardInterval: d and w must be > 0");
}

}  // namespace

double policy_value(double sigma, RewardInterval interval) {
    check_interval(interval);
    return gaussian_interval_mass(0.0, sigma, interval.d, interval.d + interval.w);
}

double optimal_sigma_closed(RewardInterval interval) {
    check_interval(interval);
    double d = interval.d, w = interval.w;
    return std::sqrt((2.0 * d * w + w * w) / (2.0 * std::log1p(w / d)));
}

SigmaBracket default_sigma_bracket(RewardInterval interval) {
    check_interval(interval);
    return {0.9 * interval.d, 1.1 * (interval.d + interval.w)};
}

double optimal_sigma_numeric(RewardInterval interval, double tol) {
    SigmaBracket br = default_sigma_bracket(interval);
    return maximize_unimodal([interval](double s) { return policy_value(s, interval); },
                             br.lo, br.hi, tol);
}

double inverse_value_sigma(double w, double v, double value_floor) {
    if (!(w > 0.0)) throw std::invalid_argument("inverse_value_sigma: w must be > 0");
    if (value_floor < 0.0) throw std::invalid_argument("inverse_value_sigma: value_floor must be >= 0");
    double vf = v > value_floor ? v : value_floor;
    if (!(vf > 0.0)) throw std::invalid_argument("inverse_value_sigma: v must be > 0 when value_floor is 0");
    return w / (sqrt_two_pi_e * vf);
}

BatchSuccess batch_success_probability(double v, long n) {
    if (!(v >= 0.0) || !(v <= 1.0)) throw std::invalid_argument("batch_success_probability: v must be in [0,1]");
    if (n < 1) throw std::invalid_argument("batch_success_probability: n must be >= 1");
    double linear = static_cast<double>(n) * v;
    double exact = v >= 1.0 ? 1.0 : -std::expm1(static_cast<double>(n) * std::log1p(-v));
    if (exact > linear) exact = linear;  // equality case n=1, up to 1 ulp
    return {exact, linear};
}

}  // namespace vdx
