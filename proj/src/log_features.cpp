#include "persim/log_features.hpp"

#include <cmath>

namespace persim {

LogKernel make_log_kernel(double sigma, int size) {
    if (sigma <= 0.0)
        throw ParameterError("make_log_kernel: sigma must be positive, got " + std::to_string(sigma));
    if (size < 1)
        throw ParameterError("make_log_kernel: size must be at least 1, got " + std::to_string(size));

    LogKernel k;
    k.sigma = sigma;
    k.anchor = (size % 2 == 1) ? size / 2 : size / 2 - 1;
    k.taps = ImagePlane(size, size);

    const double s2 = sigma * sigma;
    const double norm = 1.0 / std::sqrt(2.0 * M_PI * s2);
    for (int i = 0; i < size; ++i) {
        for (int j = 0; j < size; ++j) {
            const double m = i - k.anchor;
            const double n = j - k.anchor;
            const double r2 = m * m + n * n;
            k.taps.at(i, j) = norm * ((r2 - 2.0 * s2) / (s2 * s2)) * std::exp(-r2 / (2.0 * s2));
        }
    }
    return k;
}

ImagePlane convolve(const ImagePlane& plane, const LogKernel& kernel, Boundary boundary) {
    if (plane.empty())
        throw DimensionError("convolve: empty input plane");

    const int rows = plane.rows();
    const int cols = plane.cols();
    const int ksize = kernel.size();
    const int anchor = kernel.anchor;

    ImagePlane out(rows, cols);
    for (int m = 0; m < rows; ++m) {
        for (int n = 0; n < cols; ++n) {
            double acc = 0.0;
            for (int ki = 0; ki < ksize; ++ki) {
                const int src_r = m - (ki - anchor);
                for (int kj = 0; kj < ksize; ++kj) {
                    const int src_c = n - (kj - anchor);
                    double v;
                    if (boundary == Boundary::Replicate) {
                        v = plane.at_clamped(src_r, src_c);
                    } else {
                        v = (src_r < 0 || src_r >= rows || src_c < 0 || src_c >= cols)
                                ? 0.0
                                : plane.at(src_r, src_c);
                    }
                    acc += v * kernel.taps.at(ki, kj);
                }
            }
            out.at(m, n) = acc;
        }
    }
    return out;
}

ImagePlane log_response(const ImagePlane& L, const ScaleParams& params, bool round_to_odd) {
    int size = params.kernel_size;
    if (round_to_odd && size % 2 == 0) size += 1;
    return convolve(L, make_log_kernel(params.sigma, size), Boundary::Replicate);
}

}  // namespace persim
