#include "persim/resample.hpp"

#include <cmath>

namespace persim {

namespace {

// Keys cubic convolution weight, a = -0.5 (the classic bicubic kernel).
double cubic_weight(double t) {
    t = std::abs(t);
    if (t < 1.0) return (1.5 * t - 2.5) * t * t + 1.0;
    if (t < 2.0) return ((-0.5 * t + 2.5) * t - 4.0) * t + 2.0;
    return 0.0;
}

struct Tap {
    int index[4];
    double weight[4];
};

// Per-output-coordinate source taps for one axis.
std::vector<Tap> make_taps(int src_len, int dst_len) {
    std::vector<Tap> taps(static_cast<std::size_t>(dst_len));
    const double step = static_cast<double>(src_len) / dst_len;
    for (int d = 0; d < dst_len; ++d) {
        const double src = (d + 0.5) * step - 0.5;
        const int base = static_cast<int>(std::floor(src));
        const double frac = src - base;
        Tap& t = taps[d];
        for (int k = 0; k < 4; ++k) {
            const int idx = base - 1 + k;
            t.index[k] = std::clamp(idx, 0, src_len - 1);
            t.weight[k] = cubic_weight(frac - (k - 1));
        }
    }
    return taps;
}

}  // namespace

int scaled_extent(int extent, double ratio) {
    const int scaled = static_cast<int>(std::lround(extent * ratio));
    return scaled < 1 ? 1 : scaled;
}

ImagePlane resize_bicubic(const ImagePlane& src, int out_rows, int out_cols) {
    if (src.empty())
        throw DimensionError("resize_bicubic: empty input plane");
    if (out_rows < 1 || out_cols < 1)
        throw ParameterError("resize_bicubic: target dimensions must be at least 1x1");
    if (out_rows == src.rows() && out_cols == src.cols())
        return src;

    // Horizontal pass, then vertical.
    const std::vector<Tap> col_taps = make_taps(src.cols(), out_cols);
    ImagePlane mid(src.rows(), out_cols);
    for (int r = 0; r < src.rows(); ++r) {
        for (int c = 0; c < out_cols; ++c) {
            const Tap& t = col_taps[c];
            double acc = 0.0;
            for (int k = 0; k < 4; ++k) acc += t.weight[k] * src.at(r, t.index[k]);
            mid.at(r, c) = acc;
        }
    }

    const std::vector<Tap> row_taps = make_taps(src.rows(), out_rows);
    ImagePlane out(out_rows, out_cols);
    for (int r = 0; r < out_rows; ++r) {
        const Tap& t = row_taps[r];
        for (int c = 0; c < out_cols; ++c) {
            double acc = 0.0;
            for (int k = 0; k < 4; ++k) acc += t.weight[k] * mid.at(t.index[k], c);
            out.at(r, c) = acc;
        }
    }
    return out;
}

}  // namespace persim
