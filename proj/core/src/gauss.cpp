#include "vdx/gauss.hpp"

#include <cmath>
#include <stdexcept>

namespace vdx {

namespace {

constexpr double inv_sqrt_two_pi = 0.39894228040143267794;
constexpr double inv_sqrt_two = 0.70710678118654752440;

// Cody's rational coefficients (SPECFUN "calerf").
constexpr double A[5] = {3.16112374387056560e+00, 1.13864154151050156e+02,
                         3.77485237685302021e+02, 3.20937758913846947e+03,
                         1.85777706184603153e-01};
constexpr double B[4] = {2.36012909523441209e+01, 2.44024637934444173e+02,
                         1.28261652607737228e+03, 2.84423683343917062e+03};
constexpr double C[9] = {5.64188496988670089e-01, 8.88314979438837594e+00,
                         6.61191906371416295e+01, 2.98635138197400131e+02,
                         8.81952221241769090e+02, 1.71204761263407058e+03,
                         2.05107837782607147e+03, 1.23033935479799725e+03,
                         2.15311535474403846e-08};
constexpr double D[8] = {1.57449261107098347e+01, 1.17693950891312499e+02,
                         5.37181101862009858e+02, 1.62138957456669019e+03,
                         3.29079923573345963e+03, 4.36261909014324716e+03,
                         3.43936767414372164e+03, 1.23033935480374942e+03};
constexpr double P[6] = {3.05326634961232344e-01, 3.60344899949804439e-01,
                         1.25781726111229246e-01, 1.60837851487422766e-02,
                         6.58749161529837803e-04, 1.63153871373020978e-02};
constexpr double Q[5] = {2.56852019228982242e+00, 1.87295284992346047e+00,
                         5.27905102951428412e-01, 6.05183413124413191e-02,
                         2.33520497626869185e-03};

constexpr double erf_thresh = 0.46875;
constexpr double erfc_big = 26.543;   // erfc underflows beyond this
constexpr double inv_sqrt_pi = 0.56418958354775628695;

// erf(x) for |x| <= 0.46875.
double erf_small(double x) {
    double z = x * x;
    double num = A[4] * z;
    double den = z;
    for (int i = 0; i < 3; ++i) {
        num = (num + A[i]) * z;
        den = (den + B[i]) * z;
    }
    return x * (num + A[3]) / (den + B[3]);
}

// erfc(y) for y > 0.46875.
double erfc_pos(double y) {
    double result;
    if (y <= 4.0) {
        double num = C[8] * y;
        double den = y;
        for (int i = 0; i < 7; ++i) {
            num = (num + C[i]) * y;
            den = (den + D[i]) * y;
        }
        result = (num + C[7]) / (den + D[7]);
    } else {
        if (y >= erfc_big) return 0.0;
        double z = 1.0 / (y * y);
        double num = P[5] * z;
        double den = z;
        for (int i = 0; i < 4; ++i) {
            num = (num + P[i]) * z;
            den = (den + Q[i]) * z;
        }
        double r = z * (num + P[4]) / (den + Q[4]);
        result = (inv_sqrt_pi - r) / y;
    }
    // exp(-y^2) split to limit rounding in the argument, as in SPECFUN
    double ysq = std::trunc(y * 16.0) / 16.0;
    double del = (y - ysq) * (y + ysq);
    return std::exp(-ysq * ysq) * std::exp(-del) * result;
}

}  // namespace

double std_normal_pdf(double x) {
    return inv_sqrt_two_pi * std::exp(-0.5 * x * x);
}

double erf(double x) {
    double y = std::fabs(x);
    if (y <= erf_thresh) return erf_small(x);
    double r = 1.0 - erfc_pos(y);
    return x < 0.0 ? -r : r;
}

double erfc(double x) {
    double y = std::fabs(x);
    if (y <= erf_thresh) return 1.0 - erf_small(x);
    double r = erfc_pos(y);
    return x < 0.0 ? 2.0 - r : r;
}

double std_normal_cdf(double x) {
    return 0.5 * erfc(-x * inv_sqrt_two);
}

double gaussian_interval_mass(double mu, double sigma, double lo, double hi) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_interval_mass: sigma must be > 0");
    if (lo > hi) throw std::invalid_argument("gaussian_interval_mass: lo > hi");
    double a = (lo - mu) / sigma;
    double b = (hi - mu) / sigma;
    if (a >= 0.0) {
        // both in the upper tail: difference of complementary tails
        return 0.5 * (erfc(a * inv_sqrt_two) - erfc(b * inv_sqrt_two));
    }
    if (b <= 0.0) {
        return 0.5 * (erfc(-b * inv_sqrt_two) - erfc(-a * inv_sqrt_two));
    }
    return std_normal_cdf(b) - std_normal_cdf(a);
}

double clipped_gaussian_entropy(double mu, double sigma, ClipBounds bounds) {
    if (!(sigma > 0.0)) throw std::invalid_argument("clipped_gaussian_entropy: sigma must be > 0");
    if (!(bounds.lo < bounds.hi)) throw std::invalid_argument("clipped_gaussian_entropy: lo >= hi");
    double alpha = (bounds.lo - mu) / sigma;
    double beta = (bounds.hi - mu) / sigma;
    double z = gaussian_interval_mass(mu, sigma, bounds.lo, bounds.hi);
    double p1 = std_normal_cdf(alpha);
    double p2 = std_normal_cdf(-beta);
    auto plogp = [](double p) { return p > 0.0 ? p * std::log(p) : 0.0; };
    return z * (log_sqrt_two_pi_e + std::log(sigma)) +
           0.5 * (alpha * std_normal_pdf(alpha) - beta * std_normal_pdf(beta)) -
           plogp(p1) - plogp(p2);
}

}  // namespace vdx
