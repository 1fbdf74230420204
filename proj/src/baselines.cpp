#include "persim/baselines.hpp"

#include <cmath>

namespace persim {

double rmse(const RgbImage& ref, const RgbImage& dist) {
    require_same_size(ref, dist, "rmse");
    double acc = 0.0;
    const ImagePlane* a[3] = {&ref.r, &ref.g, &ref.b};
    const ImagePlane* b[3] = {&dist.r, &dist.g, &dist.b};
    for (int ch = 0; ch < 3; ++ch) {
        const double* p = a[ch]->data();
        const double* q = b[ch]->data();
        const std::size_t n = a[ch]->size();
        for (std::size_t i = 0; i < n; ++i) {
            const double d = p[i] - q[i];
            acc += d * d;
        }
    }
    return std::sqrt(acc / (3.0 * ref.r.size()));
}

double psnr(const RgbImage& ref, const RgbImage& dist, const PsnrParams& params) {
    if (params.peak <= 0.0)
        throw ParameterError("psnr: peak must be positive");
    const double err = rmse(ref, dist);
    if (err == 0.0) return params.cap_db;
    return std::min(params.cap_db, 20.0 * std::log10(params.peak / err));
}

}  // namespace persim
