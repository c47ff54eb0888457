#include "vdx/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace vdx {

namespace {

double simpson_rec(const std::function<double(double)>& f,
                   double a, double m, double b,
                   double fa, double fm, double fb,
                   double whole, double tol, int depth) {
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    double flm = f(lm);
    double frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_adaptive_simpson(const std::function<double(double)>& f,
                                  double a, double b, double abs_tol) {
    if (!(abs_tol > 0.0)) throw std::invalid_argument("integrate_adaptive_simpson: abs_tol must be > 0");
    if (a == b) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, m, b, fa, fm, fb, whole, abs_tol, 48);
}

}  // namespace vdx
