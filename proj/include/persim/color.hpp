#pragma once

#include "persim/image.hpp"

namespace persim {

// CIE 1976 L*a*b*: L in [0,100], a/b nominally in [-128,127].
struct LabImage {
    ImagePlane L, a, b;

    int rows() const { return L.rows(); }
    int cols() const { return L.cols(); }

    void validate() const {
        if (!L.same_size(a) || !L.same_size(b))
            throw DimensionError("LabImage: channel dimensions differ");
    }
};

inline void require_same_size(const LabImage& x, const LabImage& y, const char* what) {
    x.validate();
    y.validate();
    require_same_size(x.L, y.L, what);
}

// Inverse sRGB transfer function; v in [0,1].
double srgb_to_linear(double v);

// sRGB (8-bit, D65) -> CIE 1976 L*a*b*. Gray inputs map to a = b = 0 exactly.
LabImage rgb_to_lab(const RgbImage& img);

// Single-pixel conversion, shared by rgb_to_lab and the bindings.
void rgb_to_lab_pixel(double r8, double g8, double b8, double& L, double& a, double& b);

}  // namespace persim
