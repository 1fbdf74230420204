#pragma once

#include "persim/image.hpp"

namespace persim {

// Discrete Laplacian-of-Gaussian operator. Taps hold
//   (1/sqrt(2*pi*sigma^2)) * ((m^2+n^2-2*sigma^2)/sigma^4) * exp(-(m^2+n^2)/(2*sigma^2))
// evaluated at integer offsets from the anchor tap.
struct LogKernel {
    ImagePlane taps;
    double sigma = 0.0;
    // Index of the zero-offset tap. size/2 for odd kernels; for even kernels
    // the anchor sits at the top-left of the central block (index size/2 - 1,
    // which is 0 for a 2x2).
    int anchor = 0;

    int size() const { return taps.rows(); }
};

enum class Boundary { Replicate, Zero };

// Per-resolution parameters: scaling ratio, LoG sigma, window edge length.
struct ScaleParams {
    double ratio = 1.0;
    double sigma = 10.0;
    int kernel_size = 13;
};

LogKernel make_log_kernel(double sigma, int size);

// True 2-D convolution: out(m,n) = sum_{i,j} plane(m-i, n-j) * kernel(i,j),
// same-size output, boundary handled by the chosen extension.
ImagePlane convolve(const ImagePlane& plane, const LogKernel& kernel,
                    Boundary boundary = Boundary::Replicate);

// Eq.-style composition: LoG response of a luma plane at the given scale
// parameters with replicate extension. When round_to_odd is set, even window
// sizes are widened to the next odd size so the kernel has a center tap.
ImagePlane log_response(const ImagePlane& L, const ScaleParams& params, bool round_to_odd = true);

}  // namespace persim
