#pragma once

#include "persim/image.hpp"

namespace persim {

// Separable bicubic resize (Keys kernel, a = -0.5), replicate boundary,
// pixel centers aligned: src = (dst + 0.5) * (src_len / dst_len) - 0.5.
// Returns a copy when the target size equals the source size.
ImagePlane resize_bicubic(const ImagePlane& src, int out_rows, int out_cols);

// round(ratio * extent), floored at 1.
int scaled_extent(int extent, double ratio);

}  // namespace persim
