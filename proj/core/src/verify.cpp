#include "vdx/verify.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "vdx/gauss.hpp"
#include "vdx/harness.hpp"
#include "vdx/mdp.hpp"
#include "vdx/optimize.hpp"
#include "vdx/oracles.hpp"
#include "vdx/variance.hpp"

namespace vdx {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

struct Suite {
    double tol_scale;
    std::vector<CheckResult> results;

    void add(const std::string& name, double measured, double tol) {
        double scaled = tol * tol_scale;
        bool pass = std::isfinite(measured) && measured <= scaled;
        results.push_back({name, measured, scaled, pass});
    }
};

std::string fmt_g(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

double rel_diff(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

// ---- gauss ----------------------------------------------------------------

void check_gauss(Suite& s) {
    s.add("pdf-value-at-0",
          std::fabs(std_normal_pdf(0.0) - 0.39894228040143267794), 1e-15);

    double worst = 0.0;
    for (double x = 0.1; x <= 4.05; x += 0.1)
        worst = std::max(worst, std::fabs(std_normal_pdf(x) - std_normal_pdf(-x)));
    s.add("pdf-symmetry", worst, 0.0);

    double worst_series = 0.0, worst_odd = 0.0, worst_cdf_sym = 0.0;
    for (double x = -6.0; x <= 6.0001; x += 0.01) {
        worst_series = std::max(worst_series, std::fabs(erf(x) - oracle::erf_ref(x)));
        worst_odd = std::max(worst_odd, std::fabs(erf(x) + erf(-x)));
        worst_cdf_sym =
            std::max(worst_cdf_sym, std::fabs(std_normal_cdf(x) + std_normal_cdf(-x) - 1.0));
    }
    s.add("erf-vs-series-oracle", worst_series, 1e-7);
    s.add("erf-odd-symmetry", worst_odd, 1e-15);
    s.add("erf-saturation", std::fabs(1.0 - erf(6.0)), 1e-7);
    s.add("cdf-symmetry", worst_cdf_sym, 1e-7);
    s.add("cdf-far-tail", std_normal_cdf(-10.0), 1e-7);

    struct MassCase {
        double mu, sigma, lo, hi;
    };
    const MassCase mass_cases[] = {
        {0, 1, -40, 40}, {0, 3, 3, 3.01},  {0, 1, 1, 2},    {2, 0.5, -1, 1},
        {0, 0.01, -1, 1}, {-1, 2, 0, 5},   {0, 1, -10, -1},
    };
    double worst_mass = 0.0;
    for (const auto& c : mass_cases)
        worst_mass = std::max(
            worst_mass, std::fabs(gaussian_interval_mass(c.mu, c.sigma, c.lo, c.hi) -
                                  oracle::interval_mass_ref(c.mu, c.sigma, c.lo, c.hi)));
    s.add("interval-mass-vs-quadrature", worst_mass, 1e-9);
    s.add("interval-mass-empty", std::fabs(gaussian_interval_mass(0, 1, 0, 0)), 0.0);

    {
        // widen hi -> mass up; raise lo -> mass down
        double base = gaussian_interval_mass(0, 1, -1, 1);
        double wider = gaussian_interval_mass(0, 1, -1, 1.5);
        double narrower = gaussian_interval_mass(0, 1, -0.5, 1);
        double margin = std::min(wider - base, base - narrower);
        s.add("interval-mass-monotone", margin > 0.0 ? 0.0 : inf, 0.0);
    }

    const double mu_grid[] = {-2, -0.5, 0, 0.5, 2};
    const double sigma_grid[] = {0.05, 0.2, 0.5, 1, 2};
    double worst_entropy = 0.0, worst_reflect = 0.0;
    for (double mu : mu_grid)
        for (double sigma : sigma_grid) {
            double h = clipped_gaussian_entropy(mu, sigma, {-1.0, 1.0});
            worst_entropy = std::max(
                worst_entropy, std::fabs(h - oracle::clipped_entropy_ref(mu, sigma, -1, 1)));
            // reflection with asymmetric bounds, mu -> -mu, [a,b] -> [-b,-a]
            double h1 = clipped_gaussian_entropy(mu, sigma, {-1.0, 0.5});
            double h2 = clipped_gaussian_entropy(-mu, sigma, {-0.5, 1.0});
            worst_reflect = std::max(worst_reflect, std::fabs(h1 - h2));
        }
    s.add("entropy-grid-vs-oracle", worst_entropy, 1e-4);
    s.add("entropy-reflection", worst_reflect, 1e-10);

    double worst_limit = 0.0;
    for (double sigma : {1e-2, 1e-3})
        worst_limit = std::max(
            worst_limit, std::fabs(clipped_gaussian_entropy(0.0, sigma, {-1.0, 1.0}) -
                                   (log_sqrt_two_pi_e + std::log(sigma))));
    s.add("entropy-small-sigma-limit", worst_limit, 1e-6);
    s.add("entropy-saturated-point-mass",
          std::fabs(clipped_gaussian_entropy(5.0, 0.01, {-1.0, 1.0})), 1e-6);
}

// ---- variance -------------------------------------------------------------

std::vector<RewardInterval> grid15() {
    std::vector<RewardInterval> g;
    for (double d : {0.5, 1.0, 2.0, 5.0, 10.0})
        for (double w : {0.01, 0.1, 0.3 * d}) g.push_back({d, w});
    return g;
}

// Numeric sigma* with a substitutable erf, so a degraded erf degrades the
// search the same way it would degrade the real pipeline.
double numeric_sigma_via(const std::function<double(double)>& erf_fn, RewardInterval iv) {
    constexpr double inv_sqrt_two = 0.70710678118654752440;
    auto value = [&](double sigma) {
        return 0.5 * (erf_fn((iv.d + iv.w) / sigma * inv_sqrt_two) -
                      erf_fn(iv.d / sigma * inv_sqrt_two));
    };
    SigmaBracket br = default_sigma_bracket(iv);
    return maximize_unimodal(value, br.lo, br.hi, 1e-8);
}

void check_variance(Suite& s, const VerifyOptions& opt) {
    std::function<double(double)> erf_fn = opt.erf_fn ? opt.erf_fn : [](double x) {
        return erf(x);
    };
    auto grid = grid15();

    double worst_agree = 0.0;
    for (const auto& iv : grid) {
        double closed = optimal_sigma_closed(iv);
        double numeric;
        try {
            numeric = numeric_sigma_via(erf_fn, iv);
        } catch (const optimizer_error&) {
            worst_agree = inf;
            break;
        }
        worst_agree = std::max(worst_agree, rel_diff(numeric, closed));
    }
    s.add("sigma-star-closed-vs-numeric", worst_agree, 1e-4);

    double worst_fo = 0.0;
    for (const auto& iv : grid) {
        double star = optimal_sigma_closed(iv);
        double h = 1e-6 * star;
        double fd = (policy_value(star + h, iv) - policy_value(star - h, iv)) / (2 * h);
        worst_fo = std::max(worst_fo, std::fabs(fd));
    }
    s.add("sigma-star-first-order", worst_fo, 1e-6);

    // one report line per grid point, as a sensitivity map over (d, w)
    for (const auto& iv : grid) {
        double star = optimal_sigma_closed(iv);
        double ratio = std_normal_pdf(iv.d / star) / std_normal_pdf((iv.d + iv.w) / star);
        double err = std::fabs(ratio * iv.d / (iv.d + iv.w) - 1.0);
        s.add("density-ratio-d" + fmt_g(iv.d) + "-w" + fmt_g(iv.w), err, 1e-8);
    }

    {
        double prev_sigma = 0.0, prev_value = inf;
        bool ok = true;
        for (double d = 1.0; d <= 10.0001; d += 0.5) {
            RewardInterval iv{d, 0.1};
            double star = optimal_sigma_closed(iv);
            double value = policy_value(star, iv);
            if (!(star > prev_sigma) || !(value < prev_value)) ok = false;
            prev_sigma = star;
            prev_value = value;
        }
        s.add("value-variance-antitone", ok ? 0.0 : inf, 0.0);
    }

    {
        double worst = 0.0;
        for (double r : {1e-3, 1e-4, 1e-5}) {
            double star = optimal_sigma_closed({1.0, r});
            worst = std::max(worst, std::fabs(star - 1.0) / r);
        }
        s.add("sigma-star-limit-band", worst, 5.0);
    }
    s.add("sigma-star-to-d-limit", std::fabs(optimal_sigma_closed({1.0, 1e-5}) - 1.0), 1e-3);

    {
        double worst = 0.0;
        for (double d : {2.0, 3.0, 5.0}) {
            RewardInterval iv{d, 0.01};
            double star = optimal_sigma_closed(iv);
            double mapped = inverse_value_sigma(iv.w, policy_value(star, iv), 0.0);
            worst = std::max(worst, rel_diff(mapped, star));
        }
        s.add("inverse-mapping-composition", worst, 0.02);
    }
    s.add("inverse-mapping-unit-value",
          std::fabs(inverse_value_sigma(0.01, 1.0, 0.0) -
                    static_cast<double>(0.01L / 4.1327313541224929384693918842998L)),
          1e-12);

    {
        double worst_order = 0.0, worst_quad = 0.0;
        for (double v : {0.0, 1e-4, 1e-3, 0.01, 1.0})
            for (long n : {1L, 10L, 100L, 1000L}) {
                BatchSuccess bs = batch_success_probability(v, n);
                worst_order = std::max(worst_order, bs.exact - bs.linear);
                if (v > 0.0 && v <= 0.01) {
                    double nv = static_cast<double>(n) * v;
                    worst_quad =
                        std::max(worst_quad, std::fabs(bs.exact - bs.linear) - nv * nv / 2);
                }
            }
        s.add("batch-linear-ordering", std::max(worst_order, 0.0), 0.0);
        s.add("batch-quadratic-bound", std::max(worst_quad, 0.0), 0.0);
    }
    {
        double worst = 0.0;
        struct Case {
            double v;
            long n;
        };
        for (const auto& c : {Case{1e-3, 100}, Case{0.01, 50}, Case{0.3, 10}}) {
            double ref = 1.0 - oracle::pow_ref(1.0 - c.v, c.n);
            worst = std::max(worst, std::fabs(batch_success_probability(c.v, c.n).exact - ref));
        }
        s.add("batch-exact-vs-power-oracle", worst, 1e-12);
    }
}

// ---- mdp ------------------------------------------------------------------

double fd_mdp_slope(const QProfile& profile, double d, double sigma) {
    double h = 1e-6 * sigma;
    return (mdp_value(sigma + h, d, profile, 1e-14) -
            mdp_value(sigma - h, d, profile, 1e-14)) /
           (2 * h);
}

void check_mdp(Suite& s) {
    struct DW {
        double d, w;
    };
    const DW boxcar_cases[] = {{1, 1}, {1, 0.2}, {2, 0.2}, {5, 0.5}};
    double worst_val = 0.0, worst_sig = 0.0;
    for (const auto& c : boxcar_cases) {
        QProfile box = QProfile::boxcar(c.w);
        for (double sigma : {c.d, c.d + c.w})
            worst_val = std::max(worst_val, std::fabs(mdp_value(sigma, c.d, box) -
                                                      policy_value(sigma, {c.d, c.w})));
        worst_sig = std::max(worst_sig, rel_diff(mdp_optimal_sigma(c.d, box, 1e-9),
                                                 optimal_sigma_closed({c.d, c.w})));
    }
    s.add("boxcar-value-reduction", worst_val, 1e-9);
    s.add("boxcar-sigma-reduction", worst_sig, 1e-4);
    s.add("boxcar-level-linearity",
          std::fabs(mdp_value(1, 1, QProfile::boxcar(1, 0.5)) -
                    0.5 * mdp_value(1, 1, QProfile::boxcar(1, 1))),
          1e-12);

    QProfile tri = QProfile::triangular(0.2), bump = QProfile::gaussian_bump(0.2);
    double worst_trap = 0.0;
    for (const QProfile* p : {&tri, &bump})
        worst_trap = std::max(worst_trap, std::fabs(mdp_value(1.1, 1.0, *p) -
                                                    oracle::mdp_value_ref(1.1, 1.0, *p)));
    s.add("mdp-value-vs-trapezoid", worst_trap, 1e-8);

    QProfile box = QProfile::boxcar(0.2);
    const QProfile* profiles[] = {&box, &tri, &bump};
    {
        double margin = inf;
        for (const QProfile* p : profiles)
            for (double d = 1.0; d <= 5.0001; d += 0.5) {
                double star = mdp_optimal_sigma(d, *p, 1e-9);
                margin = std::min(margin, std::min(star - d, d + p->width() - star));
            }
        s.add("mdp-bracket-interior", margin > 0.0 ? 0.0 : inf, 0.0);
    }
    {
        double star = mdp_optimal_sigma(1.0, tri, 1e-9);
        s.add("mdp-first-order", std::fabs(fd_mdp_slope(tri, 1.0, star)), 1e-6);
    }
    {
        bool ok = true;
        for (const QProfile* p : profiles)
            for (double d : {1.0, 2.0}) {
                if (!(fd_mdp_slope(*p, d, 0.99 * d) > 0.0)) ok = false;
                if (!(fd_mdp_slope(*p, d, 1.01 * (d + p->width())) < 0.0)) ok = false;
            }
        s.add("mdp-sign-structure", ok ? 0.0 : inf, 0.0);
    }
    {
        std::vector<double> d_grid;
        for (double d = 1.0; d <= 5.0001; d += 0.5) d_grid.push_back(d);
        int violations = 0;
        for (const QProfile* p : profiles) {
            auto rows = monotonicity_sweep(*p, d_grid);
            for (const auto& row : rows)
                if (row.ratio_ok && !row.monotone_ok) ++violations;
        }
        s.add("mdp-monotonicity-violations", violations, 0.0);
    }

    QProfile tri_n = tri.normalized(), bump_n = bump.normalized(),
             box_n = box.normalized();
    {
        double worst = 0.0;
        for (const QProfile* p : {&box_n, &tri_n, &bump_n})
            for (double alpha : {0.8, 0.9, 0.95, 0.999})
                worst = std::max(worst, alpha - hdr_interval(*p, alpha).mass);
        s.add("hdr-mass-floor", std::max(worst, 0.0), 1e-9);
    }
    {
        HdrInterval h = hdr_interval(box_n, 0.9);
        double w = box_n.width();
        double err = std::max({std::fabs(h.lo - 0.05 * w), std::fabs(h.hi - 0.95 * w),
                               std::fabs(h.mass - 0.9)});
        s.add("hdr-boxcar-centered", err, 1e-6);
    }
    {
        HdrInterval h = hdr_interval(tri_n, 0.8);
        double w = tri_n.width();
        double err = std::max(std::fabs((w - h.hi) - h.lo), std::fabs(h.mass - 0.8));
        s.add("hdr-triangular-symmetric", err, 1e-6);
    }
    {
        double worst = 0.0;
        for (const QProfile* p : {&tri_n, &bump_n})
            for (double alpha : {0.8, 0.9, 0.95})
                for (double d : {1.0, 2.0})
                    worst = std::max(worst, hdr_bound_check(*p, alpha, d).gap - (1 - alpha));
        s.add("hdr-bound-gap", std::max(worst, 0.0), 0.0);
    }
    s.add("hdr-bound-boxcar-near-total", hdr_bound_check(box_n, 0.999, 1.0).gap, 1e-3);

    {
        // Translating policy mean and rewarded region together changes
        // neither d nor the offset profile, so the API arguments are
        // literally identical; recompute and require bit equality.
        double v1 = mdp_value(1.1, 1.0, tri);
        double s1 = mdp_optimal_sigma(1.0, tri, 1e-9);
        const double shift = 5.0;
        double mu_shifted = 0.0 + shift, left_edge_shifted = 1.0 + shift;
        double d_after = left_edge_shifted - mu_shifted;
        double v2 = mdp_value(1.1, d_after, tri);
        double s2 = mdp_optimal_sigma(d_after, tri, 1e-9);
        s.add("translation-noop", std::fabs(v1 - v2) + std::fabs(s1 - s2), 0.0);
    }
}

}  // namespace

std::vector<CheckResult> run_verify(const VerifyOptions& opt) {
    Suite s{opt.tol_scale, {}};
    check_gauss(s);
    check_variance(s, opt);
    check_mdp(s);
    return s.results;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

void write_verify_report(const std::vector<CheckResult>& results, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path + " for writing");
    for (const auto& r : results) {
        char line[160];
        std::snprintf(line, sizeof line, "%s %s measured=%.6g tolerance=%.6g\n",
                      r.pass ? "PASS" : "FAIL", r.name.c_str(), r.measured, r.tolerance);
        out << line;
    }
    int failed = 0;
    for (const auto& r : results)
        if (!r.pass) ++failed;
    out << "# " << results.size() << " checks, " << failed << " failed\n";
    out.flush();
    if (!out) throw io_error("write error on " + path);
}

}  // namespace vdx
