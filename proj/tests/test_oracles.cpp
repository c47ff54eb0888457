#include <cmath>

#include "doctest.h"
#include "vdx/gauss.hpp"
#include "vdx/oracles.hpp"
#include "vdx/variance.hpp"

using namespace vdx;

// The reference implementations are themselves pinned to independently
// computed high-precision constants, so a bug cannot hide on both sides of a
// library-vs-oracle comparison.
TEST_SUITE("oracles") {

TEST_CASE("erf_ref at tabulated points") {
    CHECK(oracle::erf_ref(0.0) == 0.0);
    CHECK(std::fabs(oracle::erf_ref(1.0) - 0.84270079294971486934) < 1e-15);
    CHECK(std::fabs(oracle::erf_ref(-1.0) + 0.84270079294971486934) < 1e-15);
    CHECK(std::fabs(oracle::erf_ref(0.5) - 0.52049987781304653768) < 1e-15);
    CHECK(std::fabs(oracle::erf_ref(2.0) - 0.99532226501895273416) < 1e-15);
    // tail branch (quadrature, not series)
    CHECK(std::fabs(oracle::erf_ref(3.5) - 0.99999925690162765858) < 1e-14);
    CHECK(std::fabs(oracle::erf_ref(4.0) - 0.99999998458274209972) < 3e-16);
}

TEST_CASE("cdf_ref at tabulated points") {
    CHECK(oracle::cdf_ref(0.0) == 0.5);
    CHECK(std::fabs(oracle::cdf_ref(1.0) - 0.84134474606854294859) < 1e-15);
    CHECK(std::fabs(oracle::cdf_ref(-10.0) / 7.6198530241605260660e-24 - 1.0) < 1e-9);
}

TEST_CASE("interval_mass_ref at tabulated points") {
    CHECK(std::fabs(oracle::interval_mass_ref(0.0, 1.0, -1.0, 1.0)
                    - 0.68268949213708589717) < 1e-13);
    CHECK(std::fabs(oracle::interval_mass_ref(0.0, 3.0, 3.0, 3.01)
                    - 8.0522480241534207936e-4) < 1e-15);
}

TEST_CASE("clipped_entropy_ref at tabulated points") {
    CHECK(std::fabs(oracle::clipped_entropy_ref(0.0, 0.25, -1.0, 1.0)
                    - 0.032763017977976445336) < 1e-9);
    CHECK(std::fabs(oracle::clipped_entropy_ref(0.0, 0.01, -1.0, 1.0)
                    - (-3.1862316527834186263)) < 1e-8);
}

TEST_CASE("mdp_value_ref reduces to the plain interval mass for a flat profile") {
    QProfile flat = QProfile::boxcar(1.0);
    CHECK(std::fabs(oracle::mdp_value_ref(1.0, 1.0, flat)
                    - 0.13590512198327784421) < 1e-10);
}

TEST_CASE("pow_ref") {
    CHECK(oracle::pow_ref(2.0, 0) == 1.0);
    CHECK(oracle::pow_ref(2.0, 10) == 1024.0);
    // reference values for the binary doubles nearest 0.95 / 0.999, not the decimals
    CHECK(std::fabs(oracle::pow_ref(0.95, 100) - 0.0059205292203339978067) < 1e-17);
    CHECK(std::fabs(oracle::pow_ref(0.999, 100) - 0.90479214711370896159) < 1e-15);
}

TEST_CASE("optimal_sigma_closed_ref matches pinned values") {
    CHECK(std::fabs(oracle::optimal_sigma_closed_ref(1.0, 1.0)
                    - 1.4710685100747161025) < 1e-15);
    CHECK(std::fabs(oracle::optimal_sigma_closed_ref(3.0, 0.01)
                    - 3.0049986134207307389) < 1e-14);
}

}  // TEST_SUITE
