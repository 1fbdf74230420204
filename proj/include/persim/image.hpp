#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "persim/errors.hpp"

namespace persim {

// 2-D grid of real-valued samples, row-major. The universal carrier for
// channels, feature maps and similarity maps.
class ImagePlane {
public:
    ImagePlane() = default;

    ImagePlane(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {
        if (rows < 1 || cols < 1)
            throw DimensionError("ImagePlane: dimensions must be at least 1x1, got " +
                                 std::to_string(rows) + "x" + std::to_string(cols));
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return data_.empty(); }
    std::size_t size() const { return data_.size(); }

    double& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    double at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

    // Replicate (clamp-to-edge) sampling.
    double at_clamped(int r, int c) const {
        r = std::clamp(r, 0, rows_ - 1);
        c = std::clamp(c, 0, cols_ - 1);
        return at(r, c);
    }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    bool same_size(const ImagePlane& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    double mean() const {
        double acc = 0.0;
        for (double v : data_) acc += v;
        return acc / static_cast<double>(data_.size());
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

inline void require_same_size(const ImagePlane& a, const ImagePlane& b, const char* what) {
    if (!a.same_size(b))
        throw DimensionError(std::string(what) + ": plane dimensions differ (" +
                             std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                             std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + ")");
}

// Decoded 8-bit image; samples in [0,255], one plane per channel.
struct RgbImage {
    ImagePlane r, g, b;

    int rows() const { return r.rows(); }
    int cols() const { return r.cols(); }

    void validate() const {
        if (!r.same_size(g) || !r.same_size(b))
            throw DimensionError("RgbImage: channel dimensions differ");
    }
};

inline void require_same_size(const RgbImage& a, const RgbImage& b, const char* what) {
    a.validate();
    b.validate();
    require_same_size(a.r, b.r, what);
}

}  // namespace persim
