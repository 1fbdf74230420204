#include <doctest.h>

#include "persim/color.hpp"
#include "testutil.hpp"

using namespace persim;

TEST_CASE("srgb_to_linear endpoints and midpoint") {
    CHECK(srgb_to_linear(0.0) == 0.0);
    CHECK(srgb_to_linear(1.0) == doctest::Approx(1.0).epsilon(1e-12));
    // piecewise formula evaluated independently: ((0.5+0.055)/1.055)^2.4
    CHECK(srgb_to_linear(0.5) == doctest::Approx(0.21404114048223255).epsilon(1e-9));
    // below the linear knee
    CHECK(srgb_to_linear(0.04) == doctest::Approx(0.04 / 12.92).epsilon(1e-12));
}

TEST_CASE("rgb_to_lab reference points") {
    SUBCASE("black maps to the Lab origin") {
        const LabImage lab = rgb_to_lab(testutil::gray_image(ImagePlane(2, 3, 0.0)));
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 3; ++c) {
                CHECK(lab.L.at(r, c) == doctest::Approx(0.0).epsilon(1e-12));
                CHECK(std::abs(lab.a.at(r, c)) < 1e-9);
                CHECK(std::abs(lab.b.at(r, c)) < 1e-9);
            }
    }
    SUBCASE("white is the reference white") {
        const LabImage lab = rgb_to_lab(testutil::gray_image(ImagePlane(1, 1, 255.0)));
        CHECK(lab.L.at(0, 0) == doctest::Approx(100.0).epsilon(1e-3));
        CHECK(std::abs(lab.a.at(0, 0)) < 1e-3);
        CHECK(std::abs(lab.b.at(0, 0)) < 1e-3);
    }
    SUBCASE("pure red, cross-checked against a scratch CIE computation") {
        double L, a, b;
        rgb_to_lab_pixel(255.0, 0.0, 0.0, L, a, b);
        CHECK(L == doctest::Approx(53.24079414).epsilon(1e-4));
        CHECK(a == doctest::Approx(80.09245960).epsilon(1e-4));
        CHECK(b == doctest::Approx(67.20319652).epsilon(1e-4));
    }
}

TEST_CASE("gray axis is exactly neutral") {
    for (int g = 0; g <= 255; g += 5) {
        double L, a, b;
        rgb_to_lab_pixel(g, g, g, L, a, b);
        CHECK(std::abs(a) < 1e-6);
        CHECK(std::abs(b) < 1e-6);
    }
}

TEST_CASE("L is strictly increasing along the gray axis") {
    double prev = -1.0;
    for (int g = 0; g <= 255; ++g) {
        double L, a, b;
        rgb_to_lab_pixel(g, g, g, L, a, b);
        CHECK(L > prev);
        prev = L;
    }
}

TEST_CASE("conversion preserves dimensions and validates them") {
    const RgbImage img = testutil::linear_gradient(7, 5);
    const LabImage lab = rgb_to_lab(img);
    CHECK(lab.rows() == 7);
    CHECK(lab.cols() == 5);

    RgbImage bad{ImagePlane(2, 2), ImagePlane(2, 3), ImagePlane(2, 2)};
    CHECK_THROWS_AS(rgb_to_lab(bad), DimensionError);
}
