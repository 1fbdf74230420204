#include "persim/similarity.hpp"

namespace persim {

void SimilarityConstants::validate() const {
    for (double c : {c1, c2, c3, c4, c5, c6}) {
        if (c <= 0.0)
            throw ParameterError("SimilarityConstants: all constants must be positive");
    }
}

ImagePlane similarity_plane(const ImagePlane& p1, const ImagePlane& p2, double c_num,
                            double c_den) {
    require_same_size(p1, p2, "similarity_map");
    if (c_num <= 0.0 || c_den <= 0.0)
        throw ParameterError("similarity_map: constants must be positive");

    ImagePlane out(p1.rows(), p1.cols());
    const double* a = p1.data();
    const double* b = p2.data();
    double* o = out.data();
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i)
        o[i] = (2.0 * a[i] * b[i] + c_num) / (a[i] * a[i] + b[i] * b[i] + c_den);
    return out;
}

SimilarityMap similarity_map(const ImagePlane& p1, const ImagePlane& p2, double c_num,
                             double c_den, SimilarityChannel channel, double scale_ratio) {
    return SimilarityMap{similarity_plane(p1, p2, c_num, c_den), channel, scale_ratio};
}

std::pair<SimilarityMap, SimilarityMap> chroma_similarities(const LabImage& ref,
                                                            const LabImage& dist,
                                                            const SimilarityConstants& consts) {
    require_same_size(ref, dist, "chroma_similarities");
    consts.validate();
    return {similarity_map(ref.a, dist.a, consts.c3, consts.c4, SimilarityChannel::A),
            similarity_map(ref.b, dist.b, consts.c5, consts.c6, SimilarityChannel::B)};
}

void clamp_negatives(ImagePlane& plane) {
    double* p = plane.data();
    const std::size_t n = plane.size();
    for (std::size_t i = 0; i < n; ++i)
        if (p[i] < 0.0) p[i] = 0.0;
}

}  // namespace persim
