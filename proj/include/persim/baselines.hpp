#pragma once

#include "persim/image.hpp"

namespace persim {

struct PsnrParams {
    double peak = 255.0;
    double cap_db = 100.0;  // returned for identical images
};

// Root of the mean squared sample difference over all pixels and channels.
double rmse(const RgbImage& ref, const RgbImage& dist);

// 20*log10(peak/rmse), capped for the zero-error case.
double psnr(const RgbImage& ref, const RgbImage& dist, const PsnrParams& params = {});

}  // namespace persim
