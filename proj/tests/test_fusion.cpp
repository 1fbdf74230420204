#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "persim/fusion.hpp"
#include "testutil.hpp"

using namespace persim;

namespace {

SimilarityMap uniform_map(int rows, int cols, double v, SimilarityChannel ch) {
    return SimilarityMap{ImagePlane(rows, cols, v), ch, 1.0};
}

LabImage lab_of(const RgbImage& img) { return rgb_to_lab(img); }

}  // namespace

TEST_CASE("fuse_channels takes the minimum of the tuned powers") {
    const int R = 3, C = 4;
    SUBCASE("all ones stays all ones") {
        const ImagePlane out = fuse_channels(uniform_map(R, C, 1.0, SimilarityChannel::LoG),
                                             uniform_map(R, C, 1.0, SimilarityChannel::A),
                                             uniform_map(R, C, 1.0, SimilarityChannel::B), 4.0, 2.0);
        for (int r = 0; r < R; ++r)
            for (int c = 0; c < C; ++c) CHECK(out.at(r, c) == 1.0);
    }
    SUBCASE("LoG term dominates: 0.9^4") {
        const ImagePlane out = fuse_channels(uniform_map(R, C, 0.9, SimilarityChannel::LoG),
                                             uniform_map(R, C, 1.0, SimilarityChannel::A),
                                             uniform_map(R, C, 1.0, SimilarityChannel::B), 4.0, 2.0);
        CHECK(out.at(0, 0) == doctest::Approx(0.6561).epsilon(1e-12));
    }
    SUBCASE("chroma can dominate: min(1, 0.49, 0.9025)") {
        const ImagePlane out = fuse_channels(uniform_map(R, C, 1.0, SimilarityChannel::LoG),
                                             uniform_map(R, C, 0.7, SimilarityChannel::A),
                                             uniform_map(R, C, 0.95, SimilarityChannel::B), 4.0, 2.0);
        CHECK(out.at(0, 0) == doctest::Approx(0.49).epsilon(1e-12));
    }
    SUBCASE("negative similarities map positive under even powers") {
        const ImagePlane out = fuse_channels(uniform_map(R, C, -0.5, SimilarityChannel::LoG),
                                             uniform_map(R, C, 1.0, SimilarityChannel::A),
                                             uniform_map(R, C, 1.0, SimilarityChannel::B), 4.0, 2.0);
        CHECK(out.at(0, 0) == doctest::Approx(0.0625).epsilon(1e-12));
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(fuse_channels(uniform_map(2, 2, 1, SimilarityChannel::LoG),
                                      uniform_map(2, 3, 1, SimilarityChannel::A),
                                      uniform_map(2, 2, 1, SimilarityChannel::B), 4.0, 2.0),
                        DimensionError);
    }
}

TEST_CASE("pool_and_map") {
    CHECK(pool_and_map(ImagePlane(4, 4, 1.0), 25.0) == 1.0);
    CHECK(pool_and_map(ImagePlane(4, 4, 0.9), 25.0) ==
          doctest::Approx(0.0717897987691853).epsilon(1e-6));
    CHECK(pool_and_map(ImagePlane(4, 4, 0.0), 25.0) == 0.0);
    CHECK(pool_and_map(ImagePlane(4, 4, -0.2), 25.0) == 0.0);  // negativity guard
    CHECK_THROWS_AS(pool_and_map(ImagePlane(), 25.0), DimensionError);
}

TEST_CASE("pooling is monotone and the power map preserves rankings") {
    std::mt19937 rng(61);
    ImagePlane a = testutil::random_plane(6, 6, rng, 0.0, 1.0);
    ImagePlane b = a;
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) b.at(r, c) = std::min(1.0, b.at(r, c) + 0.05);
    CHECK(pool_and_map(a, 25.0) <= pool_and_map(b, 25.0));

    // ranking of pooled means == ranking of mapped scores
    std::vector<double> means, mapped;
    for (int i = 0; i < 10; ++i) {
        const ImagePlane m = testutil::random_plane(5, 5, rng, 0.0, 1.0);
        means.push_back(m.mean());
        mapped.push_back(pool_and_map(m, 25.0));
    }
    std::vector<std::size_t> by_mean(means.size()), by_score(means.size());
    std::iota(by_mean.begin(), by_mean.end(), 0u);
    by_score = by_mean;
    std::sort(by_mean.begin(), by_mean.end(), [&](auto i, auto j) { return means[i] < means[j]; });
    std::sort(by_score.begin(), by_score.end(),
              [&](auto i, auto j) { return mapped[i] < mapped[j]; });
    CHECK(by_mean == by_score);
}

TEST_CASE("geometric_mean_maps") {
    std::mt19937 rng(67);
    SUBCASE("idempotent on identical maps") {
        const ImagePlane v = testutil::random_plane(5, 5, rng, 0.05, 1.0);
        const ImagePlane out = geometric_mean_maps({v, v, v});
        for (int r = 0; r < 5; ++r)
            for (int c = 0; c < 5; ++c)
                CHECK(out.at(r, c) == doctest::Approx(v.at(r, c)).epsilon(1e-12));
    }
    SUBCASE("matches direct arithmetic") {
        const ImagePlane out = geometric_mean_maps(
            {ImagePlane(1, 1, 1.0), ImagePlane(1, 1, 0.6), ImagePlane(1, 1, 0.4)});
        CHECK(out.at(0, 0) == doctest::Approx(0.6214465011907718).epsilon(1e-5));
    }
    SUBCASE("zero annihilates") {
        const ImagePlane out = geometric_mean_maps(
            {ImagePlane(2, 2, 0.8), ImagePlane(2, 2, 0.0), ImagePlane(2, 2, 0.9)});
        CHECK(out.at(1, 1) == 0.0);
    }
    SUBCASE("negative cross-scale products floor to zero") {
        const ImagePlane out =
            geometric_mean_maps({ImagePlane(1, 1, -0.5), ImagePlane(1, 1, 0.5)});
        CHECK(out.at(0, 0) == 0.0);
    }
    SUBCASE("a single map passes through untouched, negatives included") {
        ImagePlane v(2, 2, 0.3);
        v.at(0, 1) = -0.4;
        const ImagePlane out = geometric_mean_maps({v});
        CHECK(out.at(0, 1) == -0.4);
        CHECK(out.at(0, 0) == 0.3);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(geometric_mean_maps({}), DimensionError);
        CHECK_THROWS_AS(geometric_mean_maps({ImagePlane(2, 2), ImagePlane(3, 2)}),
                        DimensionError);
    }
}

TEST_CASE("persim identity on diverse content") {
    const PersimConfig cfg;
    for (const RgbImage& img :
         {testutil::linear_gradient(48, 64), testutil::uniform_noise(48, 64, 5),
          testutil::photo_like(48, 64, 6), testutil::checkerboard(48, 64)}) {
        const LabImage lab = lab_of(img);
        CHECK(persim::persim(lab, lab, cfg).value == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(persim_single_resolution(lab, lab, cfg).value == 1.0);
        CHECK(logsim_metric(lab, lab, cfg).value == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("heavier noise scores lower") {
    const PersimConfig cfg;
    const RgbImage ref = testutil::photo_like(64, 80, 9);
    const LabImage lab_ref = lab_of(ref);
    const double s5 = persim::persim(lab_ref, lab_of(testutil::add_gaussian_noise(ref, 5.0, 100)), cfg).value;
    const double s20 =
        persim::persim(lab_ref, lab_of(testutil::add_gaussian_noise(ref, 20.0, 100)), cfg).value;
    CHECK(s20 < s5);
    CHECK(s5 < 1.0);

    const double sr5 = persim_single_resolution(
                           lab_ref, lab_of(testutil::add_gaussian_noise(ref, 5.0, 100)), cfg)
                           .value;
    const double sr20 = persim_single_resolution(
                            lab_ref, lab_of(testutil::add_gaussian_noise(ref, 20.0, 100)), cfg)
                            .value;
    CHECK(sr20 < sr5);
}

TEST_CASE("replacing an image with flat gray collapses the score") {
    const PersimConfig cfg;
    const RgbImage ref = testutil::photo_like(64, 64, 13);
    const RgbImage gray = testutil::gray_image(ImagePlane(64, 64, 128.0));
    CHECK(persim::persim(lab_of(ref), lab_of(gray), cfg).value < 0.05);
    CHECK(persim_single_resolution(lab_of(ref), lab_of(gray), cfg).value < 0.05);
}

TEST_CASE("achromatic inputs make logsim and persim agree") {
    const PersimConfig cfg;
    std::mt19937 rng(71);
    const RgbImage a = testutil::gray_image(testutil::random_plane(40, 40, rng, 0.0, 255.0));
    const RgbImage b = testutil::gaussian_blur(a, 1.5);
    const double p = persim::persim(lab_of(a), lab_of(b), cfg).value;
    const double l = logsim_metric(lab_of(a), lab_of(b), cfg).value;
    CHECK(p == doctest::Approx(l).epsilon(1e-9));
}

TEST_CASE("single-scale multi-resolution collapses to the single-resolution path") {
    PersimConfig cfg;
    cfg.scales = {{1.0, 10.0, 13}};
    const RgbImage ref = testutil::photo_like(32, 40, 17);
    const RgbImage dist = testutil::add_gaussian_noise(ref, 12.0, 18);
    const double mr = persim::persim(lab_of(ref), lab_of(dist), cfg).value;
    const double sr = persim_single_resolution(lab_of(ref), lab_of(dist), cfg).value;
    CHECK(mr == sr);  // bit-identical by construction
}

TEST_CASE("clamped config keeps the score in [0, 1]") {
    PersimConfig cfg;
    cfg.clamp_negative_similarity = true;
    const RgbImage ref = testutil::photo_like(40, 40, 19);
    for (unsigned seed : {21u, 22u, 23u}) {
        const RgbImage dist = testutil::add_gaussian_noise(ref, 60.0, seed);
        const double v = persim::persim(lab_of(ref), lab_of(dist), cfg).value;
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("too-small images raise a parameter error naming the minimum") {
    const PersimConfig cfg;
    CHECK(min_image_extent(cfg) == 13);
    const LabImage tiny = lab_of(testutil::checkerboard(8, 8));
    CHECK_THROWS_WITH_AS(persim::persim(tiny, tiny, cfg), doctest::Contains("13"), ParameterError);
}

TEST_CASE("literal even kernels are a usable audit path") {
    PersimConfig cfg;
    cfg.literal_even_kernels = true;
    CHECK(cfg.effective_kernel_size(1) == 4);
    CHECK(cfg.effective_kernel_size(2) == 2);
    PersimConfig def;
    CHECK(def.effective_kernel_size(1) == 5);
    CHECK(def.effective_kernel_size(2) == 3);

    const RgbImage ref = testutil::photo_like(36, 36, 29);
    const RgbImage dist = testutil::add_gaussian_noise(ref, 15.0, 30);
    const double v = persim::persim(rgb_to_lab(ref), rgb_to_lab(dist), cfg).value;
    CHECK(std::isfinite(v));
}

TEST_CASE("metric names round-trip") {
    CHECK(metric_from_name("persim") == MetricId::PerSIM);
    CHECK(metric_from_name("persim_sr") == MetricId::PerSIM_SR);
    CHECK(metric_from_name("logsim") == MetricId::LogSIM);
    CHECK(metric_from_name("psnr") == MetricId::PSNR);
    CHECK(metric_from_name("rmse") == MetricId::RMSE);
    CHECK_THROWS_AS(metric_from_name("ssim"), ParameterError);
    CHECK(std::string(metric_name(MetricId::PerSIM)) == "PerSIM");
}
