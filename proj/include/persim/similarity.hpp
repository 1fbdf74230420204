#pragma once

#include "persim/color.hpp"
#include "persim/image.hpp"

namespace persim {

// Numerator/denominator stabilizers for the three similarity maps.
struct SimilarityConstants {
    double c1 = 0.001;  // LoG numerator
    double c2 = 0.001;  // LoG denominator
    double c3 = 0.001;  // a numerator
    double c4 = 0.001;  // a denominator
    double c5 = 0.001;  // b numerator
    double c6 = 0.001;  // b denominator

    void validate() const;
};

enum class SimilarityChannel { LoG, A, B };

struct SimilarityMap {
    ImagePlane values;
    SimilarityChannel channel = SimilarityChannel::LoG;
    double scale_ratio = 1.0;
};

// Pixel-wise (2*p1*p2 + c_num) / (p1^2 + p2^2 + c_den). With c_num == c_den
// the result is <= 1 everywhere and exactly 1 where p1 == p2; opposed signs
// can drive it negative.
ImagePlane similarity_plane(const ImagePlane& p1, const ImagePlane& p2, double c_num, double c_den);

SimilarityMap similarity_map(const ImagePlane& p1, const ImagePlane& p2, double c_num,
                             double c_den, SimilarityChannel channel = SimilarityChannel::LoG,
                             double scale_ratio = 1.0);

// aSIM and bSIM over the chroma channels of a reference/distorted pair.
std::pair<SimilarityMap, SimilarityMap> chroma_similarities(const LabImage& ref,
                                                            const LabImage& dist,
                                                            const SimilarityConstants& consts);

// Optional clamp-to-zero of negative similarity values (off by default).
void clamp_negatives(ImagePlane& plane);

}  // namespace persim
