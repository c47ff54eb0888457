#include "vdx/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "vdx/gauss.hpp"
#include "vdx/optimize.hpp"
#include "vdx/quadrature.hpp"

namespace vdx {

QProfile::QProfile(std::vector<Knot> knots) : knots_(std::move(knots)) {
    if (knots_.size() < 2) throw std::invalid_argument("QProfile: need at least 2 knots");
    if (knots_.front().t != 0.0) throw std::invalid_argument("QProfile: first knot must sit at offset 0");
    double peak = 0.0;
    for (size_t i = 0; i < knots_.size(); ++i) {
        if (!std::isfinite(knots_[i].t) || !std::isfinite(knots_[i].q))
            throw std::invalid_argument("QProfile: non-finite knot");
        if (knots_[i].q < 0.0) throw std::invalid_argument("QProfile: negative value");
        if (i > 0 && !(knots_[i].t > knots_[i - 1].t))
            throw std::invalid_argument("QProfile: offsets must be strictly increasing");
        peak = std::max(peak, knots_[i].q);
    }
    if (!(peak > 0.0)) throw std::invalid_argument("QProfile: identically zero");
}

QProfile QProfile::boxcar(double width, double level) {
    return QProfile({{0.0, level}, {width, level}});
}

QProfile QProfile::triangular(double width, double peak) {
    return QProfile({{0.0, 0.0}, {0.5 * width, peak}, {width, 0.0}});
}

QProfile QProfile::gaussian_bump(double width) {
    const int n = 201;
    double s = width / 8.0;
    std::vector<Knot> knots;
    knots.reserve(n);
    for (int i = 0; i < n; ++i) {
        double t = width * static_cast<double>(i) / (n - 1);
        double z = (t - 0.5 * width) / s;
        knots.push_back({t, std::exp(-0.5 * z * z)});
    }
    return QProfile(std::move(knots));
}

QProfile QProfile::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw profile_error("cannot open profile file: " + path);
    std::vector<Knot> knots;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double t, q;
        if (!(ls >> t)) continue;  // blank or comment-only line
        if (!(ls >> q)) {
            throw profile_error(path + ":" + std::to_string(lineno) + ": expected two columns");
        }
        std::string extra;
        if (ls >> extra) {
            throw profile_error(path + ":" + std::to_string(lineno) + ": trailing data");
        }
        knots.push_back({t, q});
    }
    try {
        return QProfile(std::move(knots));
    } catch (const std::invalid_argument& e) {
        throw profile_error(path + ": " + e.what());
    }
}

double QProfile::value(double t) const {
    if (t < 0.0 || t > width()) return 0.0;
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                               [](double v, const Knot& k) { return v < k.t; });
    if (it == knots_.begin()) return knots_.front().q;
    if (it == knots_.end()) return knots_.back().q;
    const Knot& hi = *it;
    const Knot& lo = *(it - 1);
    double u = (t - lo.t) / (hi.t - lo.t);
    return lo.q + u * (hi.q - lo.q);
}

double QProfile::max_value() const {
    double peak = 0.0;
    for (const Knot& k : knots_) peak = std::max(peak, k.q);
    return peak;
}

double QProfile::integral() const {
    double sum = 0.0;
    for (size_t i = 1; i < knots_.size(); ++i)
        sum += 0.5 * (knots_[i].q + knots_[i - 1].q) * (knots_[i].t - knots_[i - 1].t);
    return sum;
}

double QProfile::integral(double lo, double hi) const {
    lo = std::max(lo, 0.0);
    hi = std::min(hi, width());
    if (!(lo < hi)) return 0.0;
    double sum = 0.0;
    for (size_t i = 1; i < knots_.size(); ++i) {
        double a = std::max(lo, knots_[i - 1].t);
        double b = std::min(hi, knots_[i].t);
        if (!(a < b)) continue;
        sum += 0.5 * (value(a) + value(b)) * (b - a);
    }
    return sum;
}

QProfile QProfile::scaled(double factor) const {
    if (!(factor > 0.0)) throw std::invalid_argument("QProfile::scaled: factor must be > 0");
    std::vector<Knot> knots = knots_;
    for (Knot& k : knots) k.q *= factor;
    return QProfile(std::move(knots));
}

QProfile QProfile::normalized() const {
    return scaled(1.0 / integral());
}

QProfile QProfile::clipped(double lo, double hi) const {
    if (!(0.0 <= lo && lo < hi && hi <= width()))
        throw std::invalid_argument("QProfile::clipped: need 0 <= lo < hi <= width");
    std::vector<Knot> knots;
    knots.push_back({0.0, value(lo)});
    for (const Knot& k : knots_)
        if (k.t > lo && k.t < hi) knots.push_back({k.t - lo, k.q});
    knots.push_back({hi - lo, value(hi)});
    return QProfile(std::move(knots));
}

double mdp_value(double sigma, double d, const QProfile& profile, double abs_tol) {
    if (!(sigma > 0.0)) throw std::invalid_argument("mdp_value: sigma must be > 0");
    if (!(d > 0.0)) throw std::invalid_argument("mdp_value: d must be > 0");
    auto integrand = [&](double t) {
        return std_normal_pdf((t + d) / sigma) / sigma * profile.value(t);
    };
    const auto& knots = profile.knots();
    double w = profile.width();
    double sum = 0.0;
    for (size_t i = 1; i < knots.size(); ++i) {
        double seg = knots[i].t - knots[i - 1].t;
        sum += integrate_adaptive_simpson(integrand, knots[i - 1].t, knots[i].t,
                                          abs_tol * seg / w);
    }
    return sum;
}

double mdp_optimal_sigma(double d, const QProfile& profile, double tol, double quad_tol) {
    if (!(d > 0.0)) throw std::invalid_argument("mdp_optimal_sigma: d must be > 0");
    double w = profile.width();
    double lo = d * (1.0 - 1e-6);
    double hi = (d + w) * (1.0 + 1e-6);
    double s = maximize_unimodal(
        [&](double sigma) { return mdp_value(sigma, d, profile, quad_tol); }, lo, hi, tol);
    if (!(s > d && s < d + w))
        throw optimizer_error("mdp_optimal_sigma: maximizer not strictly inside (d, d+w)");
    return s;
}

std::vector<MonotonicityRow> monotonicity_sweep(const QProfile& profile,
                                                const std::vector<double>& d_grid,
                                                double tol) {
    const double ratio_limit = 0.7320508075688772935;  // sqrt(3) - 1
    std::vector<MonotonicityRow> rows;
    rows.reserve(d_grid.size());
    const MonotonicityRow* prev_flagged = nullptr;
    for (double d : d_grid) {
        MonotonicityRow row;
        row.d = d;
        row.sigma_star = mdp_optimal_sigma(d, profile, tol);
        row.v_star = mdp_value(row.sigma_star, d, profile);
        row.ratio_ok = profile.width() / d < ratio_limit;
        row.monotone_ok = true;
        if (row.ratio_ok && prev_flagged != nullptr)
            row.monotone_ok = row.sigma_star > prev_flagged->sigma_star &&
                              row.v_star < prev_flagged->v_star;
        rows.push_back(row);
        if (row.ratio_ok) prev_flagged = &rows.back();
    }
    return rows;
}

namespace {

struct Span {
    double lo, hi;
};

// Connected components of {t : q(t) >= f}; zero-width touch points carry no
// mass and are dropped.
std::vector<Span> superlevel_spans(const QProfile& profile, double f) {
    const auto& knots = profile.knots();
    std::vector<Span> spans;
    for (size_t i = 1; i < knots.size(); ++i) {
        double t0 = knots[i - 1].t, q0 = knots[i - 1].q;
        double t1 = knots[i].t, q1 = knots[i].q;
        bool a0 = q0 >= f, a1 = q1 >= f;
        if (!a0 && !a1) continue;
        double lo = t0, hi = t1;
        if (a0 != a1) {
            double tc = t0 + (f - q0) / (q1 - q0) * (t1 - t0);
            if (a0) hi = tc;
            else lo = tc;
        }
        if (!spans.empty() && lo <= spans.back().hi)
            spans.back().hi = std::max(spans.back().hi, hi);
        else
            spans.push_back({lo, hi});
    }
    std::vector<Span> out;
    for (const Span& s : spans)
        if (s.hi > s.lo) out.push_back(s);
    return out;
}

double spans_mass(const QProfile& profile, const std::vector<Span>& spans) {
    double m = 0.0;
    for (const Span& s : spans) m += profile.integral(s.lo, s.hi);
    return m;
}

// x in [lo, hi] with integral(lo, x) == target, by bisection on the exact
// piecewise-linear integral.
double position_with_mass(const QProfile& profile, double lo, double hi, double target) {
    double a = lo, b = hi;
    for (int i = 0; i < 200 && b - a > 0.0; ++i) {
        double m = 0.5 * (a + b);
        if (profile.integral(lo, m) < target) a = m;
        else b = m;
    }
    return 0.5 * (a + b);
}

}  // namespace

HdrInterval hdr_interval(const QProfile& profile, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("hdr_interval: alpha must be in (0,1)");
    double total = profile.integral();
    double f_lo = 0.0;  // mass(0) = 1 >= alpha
    double f_hi = profile.max_value();
    for (int i = 0; i < 200; ++i) {
        double f = 0.5 * (f_lo + f_hi);
        double m = spans_mass(profile, superlevel_spans(profile, f)) / total;
        if (m >= alpha) f_lo = f;
        else f_hi = f;
    }
    std::vector<Span> spans = superlevel_spans(profile, f_lo);
    if (spans.size() != 1)
        throw profile_error("hdr_interval: superlevel set disconnected at the cut threshold");
    double lo = spans[0].lo, hi = spans[0].hi;
    double mass = profile.integral(lo, hi) / total;
    if (mass - alpha > 1e-9) {
        // flat-top plateau: trim equal mass off both ends down to alpha
        double excess_side = 0.5 * (mass - alpha) * total;
        double new_lo = position_with_mass(profile, lo, hi, excess_side);
        double tail_target = profile.integral(lo, hi) - excess_side;
        double new_hi = position_with_mass(profile, lo, hi, tail_target);
        lo = new_lo;
        hi = new_hi;
        mass = profile.integral(lo, hi) / total;
    }
    return {lo, hi, mass};
}

HdrBoundResult hdr_bound_check(const QProfile& profile, double alpha, double d, double tol) {
    HdrBoundResult r;
    r.sigma_star = mdp_optimal_sigma(d, profile, tol);
    HdrInterval hdr = hdr_interval(profile, alpha);
    QProfile clipped = profile.clipped(hdr.lo, hdr.hi);
    r.sigma_hat_star = mdp_optimal_sigma(d + hdr.lo, clipped, tol);
    r.v_star = mdp_value(r.sigma_star, d, profile);
    r.v_hat_star = mdp_value(r.sigma_hat_star, d, profile);
    r.gap = std::fabs(r.v_star - r.v_hat_star);
    return r;
}

}  // namespace vdx
