#pragma once

// One-step lookahead value of a Gaussian policy whose rewarded region carries
// a nonnegative continuation profile Q over [0, w] (offsets from the near
// edge at distance d from the policy mean):
//
//   V(sigma, d) = integral_0^w pdf((t+d)/sigma)/sigma * Q(t) dt
//
// Everything here works in offset coordinates, so translating the policy
// mean and the region together is a no-op by construction.

#include <stdexcept>
#include <string>
#include <vector>

namespace vdx {

struct profile_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Piecewise-linear nonnegative profile over [0, width]. Knots are strictly
// increasing, the first sits at 0 and the last at width, and at least one
// value is positive. Zero outside [0, width].
class QProfile {
public:
    struct Knot {
        double t;
        double q;
    };

    // Validates the invariants above; throws std::invalid_argument.
    explicit QProfile(std::vector<Knot> knots);

    static QProfile boxcar(double width, double level = 1.0);
    static QProfile triangular(double width, double peak = 1.0);
    // exp(-(t - w/2)^2 / (2 (w/8)^2)) tabulated at 201 uniform knots.
    static QProfile gaussian_bump(double width);

    // Two whitespace-separated columns (offset, value), '#' comments and
    // blank lines allowed. Parse errors report the line number.
    static QProfile from_file(const std::string& path);

    double width() const { return knots_.back().t; }
    const std::vector<Knot>& knots() const { return knots_; }

    // Linear interpolation inside [0, width], 0 outside.
    double value(double t) const;

    double max_value() const;

    // Exact integral of the piecewise-linear profile (optionally over a
    // clamped subinterval [lo, hi]).
    double integral() const;
    double integral(double lo, double hi) const;

    // Same shape scaled by factor > 0.
    QProfile scaled(double factor) const;
    // Scaled so the total integral is 1.
    QProfile normalized() const;

    // Restriction to [lo, hi] (0 <= lo < hi <= width), re-based to start at
    // offset 0. Boundary values are interpolated.
    QProfile clipped(double lo, double hi) const;

private:
    std::vector<Knot> knots_;
};

// Highest-density interval [lo, hi] in offset coordinates with contained
// mass fraction `mass` of the profile's total.
struct HdrInterval {
    double lo;
    double hi;
    double mass;
};

struct MonotonicityRow {
    double d;
    double sigma_star;
    double v_star;
    bool ratio_ok;     // w/d < sqrt(3) - 1, the regime the monotone claim covers
    bool monotone_ok;  // vs the previous ratio_ok row: sigma_star up, v_star down
};

struct HdrBoundResult {
    double sigma_star;      // maximizer under the full profile
    double sigma_hat_star;  // maximizer under the HDR-clipped profile
    double v_star;          // value of sigma_star under the full profile
    double v_hat_star;      // value of sigma_hat_star under the full profile
    double gap;             // |v_star - v_hat_star|
};

// Adaptive-Simpson evaluation of V(sigma, d), absolute tolerance abs_tol,
// integrated per linear segment so the integrand stays smooth. Throws
// std::invalid_argument if sigma <= 0 or d <= 0.
double mdp_value(double sigma, double d, const QProfile& profile,
                 double abs_tol = 1e-10);

// Golden-section maximization of mdp_value over the slightly inflated
// bracket [d (1 - 1e-6), (d + w)(1 + 1e-6)]; the result must land strictly
// inside (d, d + w) or optimizer_error is thrown (an endpoint maximum
// signals a profile or precision problem). Value evaluations use quadrature
// tolerance quad_tol.
double mdp_optimal_sigma(double d, const QProfile& profile, double tol,
                         double quad_tol = 1e-12);

// One row per d: sigma_star, v_star, the w/d regime flag, and a monotone
// flag comparing against the previous flagged row. Violations show up in
// the table rather than being dropped.
std::vector<MonotonicityRow> monotonicity_sweep(const QProfile& profile,
                                                const std::vector<double>& d_grid,
                                                double tol = 1e-9);

// Smallest single interval holding at least alpha of the profile's mass
// with density at or above the cut threshold (superlevel-set orientation).
// Threshold bisection keeps contained mass >= alpha; if the superlevel mass
// overshoots alpha by more than 1e-9 (flat-top plateau, e.g. a boxcar), the
// interval is trimmed to mass alpha by removing equal mass from both ends,
// which yields the centered interval for a boxcar. Throws profile_error if
// the superlevel set at the found threshold is disconnected (multi-modal
// profiles are out of scope). Requires 0 < alpha < 1.
HdrInterval hdr_interval(const QProfile& profile, double alpha);

// Optimal sigma under the full profile vs under the HDR(alpha)-clipped
// profile, both evaluated under the full profile. When the profile's total
// mass is <= 1 the gap is bounded by 1 - alpha.
HdrBoundResult hdr_bound_check(const QProfile& profile, double alpha, double d,
                               double tol = 1e-9);

}  // namespace vdx
