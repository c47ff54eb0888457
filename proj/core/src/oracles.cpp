#include "vdx/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace vdx::oracle {

namespace {

constexpr long double two_over_sqrt_pi = 1.1283791670955125738961589031215L;
constexpr long double inv_sqrt_two_pi = 0.39894228040143267793994605993438L;

// Composite Simpson with a fixed (even) panel count; the integrands here are
// smooth, so accuracy comes from brute node density, not adaptivity.
template <typename F>
long double simpson(F f, long double a, long double b, int panels) {
    long double h = (b - a) / panels;
    long double sum = f(a) + f(b);
    for (int i = 1; i < panels; ++i)
        sum += f(a + h * i) * (i % 2 ? 4.0L : 2.0L);
    return sum * h / 3.0L;
}

long double erf_series(long double x) {
    // 2/sqrt(pi) * sum (-1)^k x^(2k+1) / (k! (2k+1)); fine for |x| <= 3.
    long double term = x;  // k = 0 value before the 1/(2k+1) factor
    long double sum = x;
    for (int k = 1; k < 200; ++k) {
        term *= -x * x / k;
        long double add = term / (2 * k + 1);
        sum += add;
        if (std::fabs(add) < 1e-25L * std::fabs(sum)) break;
    }
    return two_over_sqrt_pi * sum;
}

long double erfc_tail(long double x) {
    // x > 3; the integrand decays on a 1/(2x) scale, so size the window to the
    // argument instead of using a fixed one -- a far-off window wastes nearly
    // all nodes and costs several digits of relative accuracy.
    long double len = std::max(1.0L, 26.0L / x);
    return two_over_sqrt_pi *
           simpson([](long double t) { return std::exp(-t * t); }, x, x + len, 20000);
}

long double erf_ld(long double x) {
    long double ax = std::fabs(x);
    long double v = ax <= 3.0L ? erf_series(ax) : 1.0L - erfc_tail(ax);
    return x < 0 ? -v : v;
}

}  // namespace

double erf_ref(double x) { return static_cast<double>(erf_ld(x)); }

double cdf_ref(double x) {
    long double z = static_cast<long double>(x) / 1.4142135623730950488016887242097L;
    if (z < -3.0L) return static_cast<double>(0.5L * erfc_tail(-z));
    if (z > 3.0L) return static_cast<double>(1.0L - 0.5L * erfc_tail(z));
    return static_cast<double>(0.5L * (1.0L + erf_series(z)));
}

double interval_mass_ref(double mu, double sigma, double lo, double hi) {
    if (!(sigma > 0.0) || lo > hi) throw std::invalid_argument("interval_mass_ref");
    long double a = std::max<long double>(lo, mu - 45.0L * sigma);
    long double b = std::min<long double>(hi, mu + 45.0L * sigma);
    if (a >= b) return 0.0;
    long double s = sigma;
    auto density = [&](long double x) {
        long double z = (x - mu) / s;
        return inv_sqrt_two_pi / s * std::exp(-0.5L * z * z);
    };
    return static_cast<double>(simpson(density, a, b, 200000));
}

double clipped_entropy_ref(double mu, double sigma, double a, double b) {
    if (!(sigma > 0.0) || a >= b) throw std::invalid_argument("clipped_entropy_ref");
    long double lo = std::max<long double>(a, mu - 45.0L * sigma);
    long double hi = std::min<long double>(b, mu + 45.0L * sigma);
    long double s = sigma;
    long double interior = 0.0L;
    if (lo < hi) {
        auto nlogp = [&](long double x) {
            long double z = (x - mu) / s;
            long double p = inv_sqrt_two_pi / s * std::exp(-0.5L * z * z);
            return p > 0.0L ? -p * std::log(p) : 0.0L;
        };
        interior = simpson(nlogp, lo, hi, 200000);
    }
    long double p1 = cdf_ref((a - mu) / sigma);
    long double p2 = 1.0L - cdf_ref((b - mu) / sigma);
    auto plogp = [](long double p) { return p > 0.0L ? p * std::log(p) : 0.0L; };
    return static_cast<double>(interior - plogp(p1) - plogp(p2));
}

double mdp_value_ref(double sigma, double d, const QProfile& profile, std::size_t points) {
    if (!(sigma > 0.0) || !(d > 0.0) || points < 2)
        throw std::invalid_argument("mdp_value_ref");
    long double w = profile.width();
    long double h = w / static_cast<long double>(points - 1);
    long double s = sigma;
    auto f = [&](long double t) {
        long double z = (t + d) / s;
        return inv_sqrt_two_pi / s * std::exp(-0.5L * z * z) *
               static_cast<long double>(profile.value(static_cast<double>(t)));
    };
    long double sum = 0.5L * (f(0.0L) + f(w));
    for (std::size_t i = 1; i + 1 < points; ++i) sum += f(h * i);
    return static_cast<double>(sum * h);
}

double pow_ref(double base, long n) {
    if (n < 0) throw std::invalid_argument("pow_ref: negative exponent");
    long double acc = 1.0L;
    for (long i = 0; i < n; ++i) acc *= base;
    return static_cast<double>(acc);
}

double optimal_sigma_closed_ref(double d, double w) {
    if (!(d > 0.0) || !(w > 0.0)) throw std::invalid_argument("optimal_sigma_closed_ref");
    long double dl = d, wl = w;
    return static_cast<double>(
        std::sqrt((2.0L * dl * wl + wl * wl) / (2.0L * std::log1p(wl / dl))));
}

}  // namespace vdx::oracle
