// SPDX-License-Identifier: Apache-2.0
#include "helpers.hpp"

#include <cmath>

using namespace rfexpose;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const ElementPattern k5g{65.0, 65.0, 30.0, 5.0};
const ElementPattern kR9{70.0, 35.0, 23.0, 17.0};
const ArrayConfig k8x8{8, 8, 21.0, 0.5};
const ArrayConfig k16x16{16, 16, 21.0, 0.5};
const ArrayConfig kSinglePort{1, 1, 43.0, 0.5};
} // namespace

TEST_CASE("azimuth attenuation", "[antenna]") {
    SECTION("boresight is unattenuated") { CHECK(azimuth_attenuation_db(k5g, 0.0) == 0.0); }
    SECTION("half the 3 dB beamwidth costs exactly 3 dB") {
        CHECK_THAT(azimuth_attenuation_db(k5g, 32.5), WithinAbs(3.0, 1e-12));
        CHECK_THAT(azimuth_attenuation_db(k5g, -32.5), WithinAbs(3.0, 1e-12));
        CHECK_THAT(azimuth_attenuation_db(kR9, 35.0), WithinAbs(3.0, 1e-12));
    }
    SECTION("clamps at the front-to-back ratio") {
        // unclamped parabola value at 120 deg would be 40.89940828402368 dB
        CHECK(azimuth_attenuation_db(k5g, 120.0) == 30.0);
        CHECK(azimuth_attenuation_db(k5g, 180.0) == 30.0);
    }
    SECTION("even symmetry and monotone growth in |phi|") {
        std::mt19937_64 rng(11);
        for (int i = 0; i < 300; ++i) {
            const double phi = testutil::uniform(rng, 0.0, 180.0);
            CHECK(azimuth_attenuation_db(k5g, phi) == azimuth_attenuation_db(k5g, -phi));
        }
        double prev = -1.0;
        for (double phi = 0.0; phi <= 180.0; phi += 0.5) {
            const double a = azimuth_attenuation_db(k5g, phi);
            CHECK(a >= prev);
            CHECK(a >= 0.0);
            CHECK(a <= 30.0);
            prev = a;
        }
    }
}

TEST_CASE("elevation attenuation", "[antenna]") {
    SECTION("zero at the horizon direction theta = 90") {
        CHECK(elevation_attenuation_db(k5g, 90.0) == 0.0);
    }
    SECTION("3 dB half a beamwidth off the horizontal") {
        CHECK_THAT(elevation_attenuation_db(k5g, 90.0 + 32.5), WithinAbs(3.0, 1e-12));
        CHECK_THAT(elevation_attenuation_db(kR9, 90.0 - 17.5), WithinAbs(3.0, 1e-12));
    }
    SECTION("narrow vertical pattern clamps hard at the zenith/nadir") {
        // unclamped parabola value at 180 deg would be 79.34693877551021 dB
        CHECK(elevation_attenuation_db(kR9, 180.0) == 23.0);
        CHECK(elevation_attenuation_db(kR9, 0.0) == 23.0);
    }
    SECTION("mirror symmetry about theta = 90") {
        // 90 +/- off round differently for arbitrary doubles, so symmetry
        // holds to rounding only
        std::mt19937_64 rng(12);
        for (int i = 0; i < 300; ++i) {
            const double off = testutil::uniform(rng, 0.0, 90.0);
            CHECK_THAT(elevation_attenuation_db(k5g, 90.0 + off),
                       WithinAbs(elevation_attenuation_db(k5g, 90.0 - off), 1e-9));
        }
    }
}

TEST_CASE("combined pattern", "[antenna]") {
    SECTION("sum of the planes, capped at the front-to-back ratio") {
        // 3 + 3 = 6 dB, below the cap
        CHECK_THAT(combined_attenuation_db(k5g, 32.5, 122.5), WithinAbs(6.0, 1e-12));
        // 30 + 30 would be 60, capped to 30
        CHECK(combined_attenuation_db(k5g, 180.0, 180.0) == 30.0);
        // each plane clamps individually before the sum
        CHECK(combined_attenuation_db(kR9, 0.0, 0.0) == 23.0);
    }
    SECTION("attenuation is bounded to [0, A_m] everywhere") {
        std::mt19937_64 rng(13);
        for (int i = 0; i < 1000; ++i) {
            const double phi = testutil::uniform(rng, -180.0, 180.0);
            const double theta = testutil::uniform(rng, 0.0, 180.0);
            const double a = combined_attenuation_db(k5g, phi, theta);
            CHECK(a >= 0.0);
            CHECK(a <= k5g.front_to_back_db);
        }
    }
}

TEST_CASE("element gain", "[antenna]") {
    SECTION("boresight hits the maximum gain") {
        CHECK(element_gain_dbi(k5g, 0.0, 90.0) == 5.0);
        CHECK(element_gain_dbi(kR9, 0.0, 90.0) == 17.0);
    }
    SECTION("3 dB beam edge") {
        CHECK_THAT(element_gain_dbi(k5g, 32.5, 90.0), WithinAbs(2.0, 1e-12));
    }
    SECTION("back lobe floor") {
        CHECK_THAT(element_gain_dbi(k5g, 180.0, 90.0), WithinAbs(-25.0, 1e-12));
        CHECK_THAT(element_gain_dbi(kR9, 180.0, 0.0), WithinAbs(-6.0, 1e-12));
    }
    SECTION("boresight is the argmax over a dense angular grid") {
        const double peak = element_gain_dbi(k5g, 0.0, 90.0);
        for (double phi = -180.0; phi <= 180.0; phi += 3.0)
            for (double theta = 0.0; theta <= 180.0; theta += 3.0)
                CHECK(element_gain_dbi(k5g, phi, theta) <= peak);
    }
}

TEST_CASE("array gain aggregation", "[antenna]") {
    SECTION("single element adds nothing") {
        CHECK(array_gain_dbi(kSinglePort, kR9, 0.0, 90.0) == 17.0);
    }
    SECTION("N elements add 10 log10 N to the element gain") {
        CHECK_THAT(array_gain_dbi(k8x8, k5g, 0.0, 90.0),
                   WithinRel(5.0 + 18.06179973983887, 1e-13));
        CHECK_THAT(array_gain_dbi(k16x16, k5g, 0.0, 90.0),
                   WithinRel(5.0 + 24.082399653118497, 1e-13));
    }
    SECTION("the offset from the element pattern is exactly 10 log10 N at any angle") {
        std::mt19937_64 rng(14);
        for (int i = 0; i < 300; ++i) {
            const double phi = testutil::uniform(rng, -180.0, 180.0);
            const double theta = testutil::uniform(rng, 0.0, 180.0);
            CHECK_THAT(array_gain_dbi(k8x8, k5g, phi, theta) - element_gain_dbi(k5g, phi, theta),
                       WithinAbs(18.06179973983887, 1e-12));
        }
    }
    SECTION("degenerate arrays are rejected") {
        CHECK_THROWS_AS(array_gain_dbi(ArrayConfig{0, 8, 21.0, 0.5}, k5g, 0.0, 90.0),
                        ValidationError);
        CHECK_THROWS_AS(array_gain_dbi(ArrayConfig{8, -1, 21.0, 0.5}, k5g, 0.0, 90.0),
                        ValidationError);
    }
}

TEST_CASE("EIRP", "[antenna]") {
    SECTION("single element at boresight: power plus element gain") {
        const ArrayConfig one{1, 1, 21.0, 0.5};
        CHECK_THAT(boresight_eirp_dbm(one, k5g), WithinAbs(26.0, 1e-12));
    }
    SECTION("boresight spot values for the shipped configurations") {
        // P + 10log10(N) + G_elem + 10log10(N), evaluated independently
        CHECK_THAT(boresight_eirp_dbm(k8x8, k5g), WithinRel(62.12359947967775, 1e-13));
        CHECK_THAT(boresight_eirp_dbm(k16x16, k5g), WithinRel(74.164799306237, 1e-13));
        CHECK_THAT(boresight_eirp_dbm(kSinglePort, kR9), WithinAbs(60.0, 1e-12));
    }
    SECTION("off-boresight EIRP follows the array gain") {
        CHECK_THAT(eirp_dbm(k8x8, k5g, 32.5, 90.0),
                   WithinRel(62.12359947967775 - 3.0, 1e-12));
        CHECK(eirp_dbm(k8x8, k5g, 0.0, 90.0) == boresight_eirp_dbm(k8x8, k5g));
    }
}

TEST_CASE("far-field distance", "[antenna]") {
    SECTION("spot values at 28 GHz") {
        // square n-by-n array at lambda/2 spacing: 2 D^2 / lambda = (n-1)^2 lambda
        CHECK_THAT(fraunhofer_distance_m(k8x8, 28.0), WithinRel(0.52465, 1e-12));
        CHECK_THAT(fraunhofer_distance_m(k16x16, 28.0), WithinRel(2.409107142857143, 1e-12));
    }
    SECTION("point source has no far-field exclusion") {
        CHECK(fraunhofer_distance_m(kSinglePort, 1.9) == 0.0);
    }
    SECTION("aperture grows with element count and with wavelength") {
        CHECK(fraunhofer_distance_m(k16x16, 28.0) > fraunhofer_distance_m(k8x8, 28.0));
        CHECK(aperture_diagonal_m(k8x8, 28.0) < aperture_diagonal_m(k8x8, 14.0));
    }
}
