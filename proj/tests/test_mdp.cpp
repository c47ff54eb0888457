#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "vdx/gauss.hpp"
#include "vdx/mdp.hpp"
#include "vdx/optimize.hpp"
#include "vdx/oracles.hpp"
#include "vdx/variance.hpp"

using namespace vdx;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
    out.close();
    return path.string();
}

bool message_contains(const std::exception& e, const std::string& needle) {
    return std::string(e.what()).find(needle) != std::string::npos;
}

// two separated plateaus; its superlevel sets are never a single interval
QProfile bimodal() {
    return QProfile({{0.0, 1.0}, {0.3, 1.0}, {0.35, 0.0}, {0.65, 0.0}, {0.7, 1.0}, {1.0, 1.0}});
}

}  // namespace

TEST_SUITE("mdp") {

TEST_CASE("QProfile construction validates its invariants") {
    CHECK_THROWS_AS(QProfile({{0.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(QProfile({{0.1, 1.0}, {0.2, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(QProfile({{0.0, 1.0}, {0.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(QProfile({{0.0, 1.0}, {0.2, -0.1}}), std::invalid_argument);
    CHECK_THROWS_AS(QProfile({{0.0, 0.0}, {0.2, 0.0}}), std::invalid_argument);
}

TEST_CASE("QProfile interpolation and integrals") {
    QProfile tri = QProfile::triangular(0.2);
    CHECK(tri.width() == 0.2);
    CHECK(tri.value(0.0) == 0.0);
    CHECK(std::fabs(tri.value(0.05) - 0.5) < 1e-15);
    CHECK(tri.value(0.1) == 1.0);
    CHECK(tri.value(-0.01) == 0.0);
    CHECK(tri.value(0.21) == 0.0);
    CHECK(tri.max_value() == 1.0);
    CHECK(std::fabs(tri.integral() - 0.1) < 1e-16);
    CHECK(std::fabs(tri.integral(0.05, 0.15) - 0.075) < 1e-15);
    CHECK(tri.integral(0.3, 0.4) == 0.0);
    CHECK(std::fabs(tri.integral(-1.0, 1.0) - tri.integral()) < 1e-16);
}

TEST_CASE("QProfile scaling and normalization") {
    QProfile box = QProfile::boxcar(0.2);
    CHECK(std::fabs(box.integral() - 0.2) < 1e-16);
    CHECK(std::fabs(box.scaled(0.5).integral() - 0.1) < 1e-16);
    CHECK(std::fabs(box.normalized().integral() - 1.0) < 1e-15);
    CHECK(std::fabs(QProfile::gaussian_bump(0.2).normalized().integral() - 1.0) < 1e-12);
    CHECK_THROWS_AS(box.scaled(0.0), std::invalid_argument);
    CHECK_THROWS_AS(box.scaled(-2.0), std::invalid_argument);
}

TEST_CASE("QProfile clipping re-bases and interpolates the boundary") {
    QProfile tri = QProfile::triangular(0.2);
    QProfile mid = tri.clipped(0.05, 0.15);
    CHECK(std::fabs(mid.width() - 0.1) < 1e-15);
    CHECK(std::fabs(mid.value(0.0) - 0.5) < 1e-15);
    CHECK(std::fabs(mid.value(0.05) - 1.0) < 1e-15);
    // probe the exact re-based endpoint: 0.15 - 0.05 lands just below 0.1
    CHECK(std::fabs(mid.value(mid.width()) - 0.5) < 1e-15);
    CHECK(std::fabs(mid.integral() - 0.075) < 1e-15);
    CHECK_THROWS_AS(tri.clipped(-0.1, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(tri.clipped(0.1, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(tri.clipped(0.1, 0.3), std::invalid_argument);
}

TEST_CASE("profile files parse with comments and report line numbers on errors") {
    std::string good = write_temp("vdx_profile_good.txt",
                                  "# a profile\n0.0 0.0\n\n0.1 1.0\n0.2 0.0  # peak done\n");
    QProfile p = QProfile::from_file(good);
    CHECK(p.knots().size() == 3);
    CHECK(std::fabs(p.value(0.05) - 0.5) < 1e-15);

    std::string onecol = write_temp("vdx_profile_onecol.txt", "0.0 1.0\n0.5\n");
    CHECK_THROWS_AS((void)QProfile::from_file(onecol), profile_error);
    try {
        (void)QProfile::from_file(onecol);
    } catch (const profile_error& e) {
        CHECK(message_contains(e, ":2:"));
        CHECK(message_contains(e, "two columns"));
    }

    std::string extra = write_temp("vdx_profile_extra.txt", "0.0 1.0 9.0\n");
    try {
        (void)QProfile::from_file(extra);
        CHECK(false);
    } catch (const profile_error& e) {
        CHECK(message_contains(e, ":1:"));
        CHECK(message_contains(e, "trailing"));
    }

    std::string neg = write_temp("vdx_profile_neg.txt", "0.0 1.0\n1.0 -0.5\n");
    try {
        (void)QProfile::from_file(neg);
        CHECK(false);
    } catch (const profile_error& e) {
        CHECK(message_contains(e, "negative"));
    }

    CHECK_THROWS_AS((void)QProfile::from_file("/nonexistent/vdx_profile.txt"), profile_error);
    std::remove(good.c_str());
    std::remove(onecol.c_str());
    std::remove(extra.c_str());
    std::remove(neg.c_str());
}

TEST_CASE("flat profile reduces the lookahead value to the plain interval mass") {
    struct Case { double sigma, d, w; };
    for (Case c : {Case{1.0, 1.0, 1.0}, Case{1.0, 1.0, 0.2}, Case{2.1, 2.0, 0.2},
                   Case{5.0, 5.0, 0.5}}) {
        double got = mdp_value(c.sigma, c.d, QProfile::boxcar(c.w));
        double ref = gaussian_interval_mass(0.0, c.sigma, c.d, c.d + c.w);
        CHECK(std::fabs(got - ref) < 1e-9);
    }
    CHECK(std::fabs(mdp_value(1.0, 1.0, QProfile::boxcar(1.0))
                    - 0.13590512198327784421) < 1e-9);
}

TEST_CASE("lookahead value is linear in the profile level") {
    QProfile one = QProfile::boxcar(0.2);
    QProfile half = QProfile::boxcar(0.2, 0.5);
    double v1 = mdp_value(1.1, 1.0, one, 1e-12);
    double vh = mdp_value(1.1, 1.0, half, 1e-12);
    CHECK(std::fabs(vh - 0.5 * v1) < 1e-11);
}

TEST_CASE("lookahead value agrees with the dense trapezoid reference") {
    for (const QProfile& p : {QProfile::triangular(0.2), QProfile::gaussian_bump(0.2)}) {
        double got = mdp_value(1.1, 1.0, p, 1e-12);
        double ref = oracle::mdp_value_ref(1.1, 1.0, p);
        CHECK(std::fabs(got - ref) < 1e-8);
    }
}

TEST_CASE("mdp_value argument validation and determinism") {
    QProfile tri = QProfile::triangular(0.2);
    CHECK_THROWS_AS((void)mdp_value(0.0, 1.0, tri), std::invalid_argument);
    CHECK_THROWS_AS((void)mdp_value(1.0, 0.0, tri), std::invalid_argument);
    CHECK(mdp_value(1.3, 1.7, tri) == mdp_value(1.3, 1.7, tri));
}

TEST_CASE("optimal sigma under a flat profile matches the closed form") {
    double got = mdp_optimal_sigma(1.0, QProfile::boxcar(0.2), 1e-9);
    CHECK(std::fabs(got - 1.0984804452079959400) < 1e-4);
}

TEST_CASE("optimal sigma lands strictly inside (d, d+w) for every stock profile") {
    for (const QProfile& p : {QProfile::boxcar(0.2), QProfile::triangular(0.2),
                              QProfile::gaussian_bump(0.2)}) {
        for (double d : {1.0, 2.0}) {
            double s = mdp_optimal_sigma(d, p, 1e-9);
            CHECK(s > d);
            CHECK(s < d + p.width());
        }
    }
}

TEST_CASE("optimal sigma is a stationary point of the lookahead value") {
    QProfile tri = QProfile::triangular(0.2);
    double s = mdp_optimal_sigma(1.0, tri, 1e-9);
    double h = 1e-5;
    double slope = (mdp_value(s + h, 1.0, tri, 1e-14) - mdp_value(s - h, 1.0, tri, 1e-14))
                 / (2.0 * h);
    CHECK(std::fabs(slope) < 1e-5);
    // and the value slopes the right way on either side of the bracket
    double lo_slope = (mdp_value(1.0 * 0.99 + h, 1.0, tri, 1e-14)
                       - mdp_value(1.0 * 0.99 - h, 1.0, tri, 1e-14)) / (2.0 * h);
    double hi_slope = (mdp_value(1.2 * 1.01 + h, 1.0, tri, 1e-14)
                       - mdp_value(1.2 * 1.01 - h, 1.0, tri, 1e-14)) / (2.0 * h);
    CHECK(lo_slope > 0.0);
    CHECK(hi_slope < 0.0);
}

TEST_CASE("monotonicity sweep: sigma* grows and v* decays with distance") {
    std::vector<double> d_grid;
    for (double d = 1.0; d <= 5.0; d += 0.5) d_grid.push_back(d);
    for (const QProfile& p : {QProfile::boxcar(0.2), QProfile::triangular(0.2),
                              QProfile::gaussian_bump(0.2)}) {
        auto rows = monotonicity_sweep(p, d_grid);
        REQUIRE(rows.size() == d_grid.size());
        for (size_t i = 0; i < rows.size(); ++i) {
            CHECK(rows[i].ratio_ok);      // w/d = 0.2 is far below the regime limit
            CHECK(rows[i].monotone_ok);
            if (i > 0) {
                CHECK(rows[i].sigma_star > rows[i - 1].sigma_star);
                CHECK(rows[i].v_star < rows[i - 1].v_star);
            }
        }
    }
}

TEST_CASE("monotonicity sweep flags d values outside the width/distance regime") {
    auto rows = monotonicity_sweep(QProfile::boxcar(0.2), {0.25, 0.3});
    REQUIRE(rows.size() == 2);
    CHECK_FALSE(rows[0].ratio_ok);  // w/d = 0.8 > sqrt(3) - 1
    CHECK(rows[1].ratio_ok);        // w/d ~ 0.67 < sqrt(3) - 1
    CHECK(rows[0].monotone_ok);     // unflagged rows are never failed
}

TEST_CASE("hdr interval of a boxcar is the centered slab") {
    HdrInterval h = hdr_interval(QProfile::boxcar(0.2), 0.9);
    CHECK(std::fabs(h.lo - 0.01) < 1e-6);
    CHECK(std::fabs(h.hi - 0.19) < 1e-6);
    CHECK(std::fabs(h.mass - 0.9) < 1e-6);
}

TEST_CASE("hdr interval of symmetric profiles is symmetric") {
    for (const QProfile& p : {QProfile::triangular(0.2), QProfile::gaussian_bump(0.2)}) {
        HdrInterval h = hdr_interval(p, 0.8);
        CHECK(std::fabs((h.lo + h.hi) - 0.2) < 1e-6);
        CHECK(h.lo > 0.0);
        CHECK(h.hi < 0.2);
        CHECK(h.mass >= 0.8 - 1e-9);
        CHECK(h.mass < 0.8 + 1e-6);
    }
    // triangular superlevel cut solves 1 - f^2 = alpha exactly
    HdrInterval t = hdr_interval(QProfile::triangular(0.2), 0.8);
    double f = std::sqrt(1.0 - 0.8);
    CHECK(std::fabs(t.lo - 0.1 * f) < 1e-9);
}

TEST_CASE("hdr interval approaches the full support as alpha -> 1") {
    HdrInterval h = hdr_interval(QProfile::triangular(0.2), 0.999);
    CHECK(h.lo < 0.004);
    CHECK(h.hi > 0.196);
    CHECK(h.mass >= 0.999 - 1e-9);
}

TEST_CASE("hdr interval rejects bad alpha and disconnected superlevel sets") {
    QProfile box = QProfile::boxcar(0.2);
    CHECK_THROWS_AS((void)hdr_interval(box, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)hdr_interval(box, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)hdr_interval(box, -0.5), std::invalid_argument);
    CHECK_THROWS_AS((void)hdr_interval(bimodal(), 0.9), profile_error);
}

TEST_CASE("hdr truncation gap obeys the mass bound for unit-mass profiles") {
    for (double alpha : {0.8, 0.9, 0.95}) {
        for (const QProfile& p : {QProfile::triangular(0.2).normalized(),
                                  QProfile::gaussian_bump(0.2).normalized()}) {
            for (double d : {1.0, 2.0}) {
                HdrBoundResult r = hdr_bound_check(p, alpha, d);
                CHECK(r.gap <= 1.0 - alpha);
                CHECK(r.v_hat_star <= r.v_star + 1e-12);  // v* is the max
                CHECK(r.sigma_star > d);
                CHECK(r.sigma_hat_star > d);
            }
        }
    }
    // near-total mass kept: the truncated optimum is nearly exact
    HdrBoundResult r = hdr_bound_check(QProfile::boxcar(0.2).normalized(), 0.999, 1.0);
    CHECK(r.gap <= 1e-3);
    CHECK(std::fabs(r.sigma_hat_star - r.sigma_star) < 1e-2);
}

TEST_CASE("hdr bound fields are mutually consistent") {
    QProfile p = QProfile::triangular(0.2).normalized();
    HdrBoundResult r = hdr_bound_check(p, 0.9, 1.0);
    CHECK(std::fabs(r.v_star - mdp_value(r.sigma_star, 1.0, p)) < 1e-12);
    CHECK(std::fabs(r.v_hat_star - mdp_value(r.sigma_hat_star, 1.0, p)) < 1e-12);
    CHECK(r.gap == std::fabs(r.v_star - r.v_hat_star));
}

}  // TEST_SUITE
