#include "vdx/optimize.hpp"

#include <cmath>

namespace vdx {

double maximize_unimodal(const std::function<double(double)>& f,
                         double lo, double hi, double tol) {
    if (!(lo < hi)) throw std::invalid_argument("maximize_unimodal: lo >= hi");
    if (!(tol > 0.0)) throw std::invalid_argument("maximize_unimodal: tol must be > 0");

    const double inv_phi = 0.6180339887498948482;  // (sqrt(5)-1)/2
    const double f_lo0 = f(lo);
    const double f_hi0 = f(hi);

    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    double best = fc > fd ? fc : fd;

    while (b - a > tol) {
        if (fc < fd) {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        } else {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        }
        if (fc > best) best = fc;
        if (fd > best) best = fd;
    }

    if (f_lo0 > best || f_hi0 > best)
        throw optimizer_error("maximize_unimodal: maximum at bracket endpoint");
    return 0.5 * (a + b);
}

}  // namespace vdx
