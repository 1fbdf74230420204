#include "persim/color.hpp"

#include <cmath>

namespace persim {

namespace {

// Linear sRGB -> XYZ, IEC 61966-2-1 primaries, D65.
constexpr double kM[3][3] = {
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
};

// Reference white taken as the matrix row sums so that the gray axis maps to
// a = b = 0 exactly and (255,255,255) lands on L = 100.
constexpr double kWhiteX = kM[0][0] + kM[0][1] + kM[0][2];
constexpr double kWhiteY = kM[1][0] + kM[1][1] + kM[1][2];
constexpr double kWhiteZ = kM[2][0] + kM[2][1] + kM[2][2];

double lab_f(double t) {
    constexpr double eps = 216.0 / 24389.0;
    constexpr double kappa = 24389.0 / 27.0;
    return t > eps ? std::cbrt(t) : (kappa * t + 16.0) / 116.0;
}

}  // namespace

double srgb_to_linear(double v) {
    return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
}

void rgb_to_lab_pixel(double r8, double g8, double b8, double& L, double& a, double& b) {
    const double rl = srgb_to_linear(r8 / 255.0);
    const double gl = srgb_to_linear(g8 / 255.0);
    const double bl = srgb_to_linear(b8 / 255.0);

    const double x = (kM[0][0] * rl + kM[0][1] * gl + kM[0][2] * bl) / kWhiteX;
    const double y = (kM[1][0] * rl + kM[1][1] * gl + kM[1][2] * bl) / kWhiteY;
    const double z = (kM[2][0] * rl + kM[2][1] * gl + kM[2][2] * bl) / kWhiteZ;

    const double fx = lab_f(x);
    const double fy = lab_f(y);
    const double fz = lab_f(z);

    L = 116.0 * fy - 16.0;
    a = 500.0 * (fx - fy);
    b = 200.0 * (fy - fz);
}

LabImage rgb_to_lab(const RgbImage& img) {
    img.validate();
    const int rows = img.rows();
    const int cols = img.cols();
    LabImage lab{ImagePlane(rows, cols), ImagePlane(rows, cols), ImagePlane(rows, cols)};
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            double L, a, b;
            rgb_to_lab_pixel(img.r.at(r, c), img.g.at(r, c), img.b.at(r, c), L, a, b);
            lab.L.at(r, c) = L;
            lab.a.at(r, c) = a;
            lab.b.at(r, c) = b;
        }
    }
    return lab;
}

}  // namespace persim
