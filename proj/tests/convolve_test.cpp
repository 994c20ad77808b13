#include <gtest/gtest.h>

#include <cmath>

#include <qdog/convolve.hpp>

#include "support/oracles.hpp"

using qdog::BorderPolicy;
using qdog::GrayImage;
using qdog::Kernel;
using qdog::ResponseMap;

namespace {

Kernel identity_kernel() {
    Kernel k;
    k.radius = 0;
    k.weights = {1.0};
    return k;
}

// ---------------------------------------------------------------------------
// basic algebraic behavior
// ---------------------------------------------------------------------------

TEST(Convolve, IdentityKernelReturnsTheImage) {
    const GrayImage img = oracle::random_image(11, 7, 99);
    for (BorderPolicy b : {BorderPolicy::replicate, BorderPolicy::reflect, BorderPolicy::zero}) {
        const ResponseMap out = qdog::convolve(img, identity_kernel(), b);
        for (std::size_t i = 0; i < img.pixels.size(); ++i)
            EXPECT_EQ(out.values[i], img.pixels[i]);
    }
}

TEST(Convolve, ImpulseRecoversTheFlippedKernel) {
    GrayImage img(7, 7, 0.0);
    img.at(3, 3) = 1.0;
    Kernel k = qdog::sample_qgauss_kernel({1.0, 1.0}, 2);
    const ResponseMap out = qdog::convolve(img, k, BorderPolicy::zero);
    // Symmetric kernel: the response centered on the impulse is the kernel.
    for (int dy = -2; dy <= 2; ++dy)
        for (int dx = -2; dx <= 2; ++dx)
            EXPECT_EQ(out.at(3 + dx, 3 + dy), k.at(dx, dy));
    EXPECT_EQ(out.at(0, 0), 0.0);
}

TEST(Convolve, TrueConvolutionFlipsAsymmetricKernels) {
    // Weight sits at offset (+1, 0); a true convolution shifts content right.
    Kernel k;
    k.radius = 1;
    k.weights.assign(9, 0.0);
    k.weights[5] = 1.0; // (dx, dy) = (+1, 0)
    GrayImage img(5, 2, 0.0);
    img.at(1, 0) = 1.0;
    const ResponseMap out = qdog::convolve(img, k, BorderPolicy::zero);
    EXPECT_EQ(out.at(2, 0), 1.0); // x - dx = 1 picks up the impulse
    EXPECT_EQ(out.at(0, 0), 0.0);
    EXPECT_EQ(out.at(1, 0), 0.0);
    for (int x = 0; x < 5; ++x)
        EXPECT_EQ(out.at(x, 1), 0.0); // the other row stays empty
}

TEST(Convolve, ConstantImageThroughZeroSumKernelVanishes) {
    const GrayImage img(16, 12, 0.6180339887498949);
    const Kernel dog = qdog::dog_kernel(1.4, 0.9, 0.5, 4);
    for (BorderPolicy b : {BorderPolicy::replicate, BorderPolicy::reflect}) {
        const ResponseMap out = qdog::convolve(img, dog, b);
        for (double v : out.values)
            EXPECT_LE(std::abs(v), 1e-12);
    }
}

TEST(Convolve, DyadicConstantThroughDogKernelIsExactlyZero) {
    // Contrast form: at a power-of-two gray level every product scales the
    // weight exactly, so the accumulated response and the residual correction
    // are the same double and the output is exactly 0.0, not ~1e-16 noise.
    const Kernel dog = qdog::dog_kernel(1.4, 0.9, 1.0, 3);
    for (double level : {0.0, 0.25, 0.5, 1.0}) {
        const GrayImage img(12, 10, level);
        for (BorderPolicy b : {BorderPolicy::replicate, BorderPolicy::reflect}) {
            const ResponseMap out = qdog::convolve(img, dog, b);
            for (double v : out.values)
                EXPECT_EQ(v, 0.0) << "level " << level;
        }
    }
}

TEST(Convolve, LinearityOfTheDifference) {
    const GrayImage img = oracle::random_image(20, 14, 7);
    const Kernel dog = qdog::dog_kernel(1.8, 1.1, 1.0, 5);
    const Kernel wide = qdog::sample_qgauss_kernel({1.0, 1.8}, 5);
    const Kernel narrow = qdog::sample_qgauss_kernel({1.0, 1.1}, 5);
    const ResponseMap full = qdog::convolve(img, dog, BorderPolicy::reflect);
    const ResponseMap a = qdog::convolve(img, wide, BorderPolicy::reflect);
    const ResponseMap b = qdog::convolve(img, narrow, BorderPolicy::reflect);
    for (std::size_t i = 0; i < full.values.size(); ++i)
        EXPECT_NEAR(full.values[i], a.values[i] - b.values[i], 1e-9);
}

TEST(Convolve, InteriorShiftEquivariance) {
    // Shifting the input shifts the response wherever the kernel footprint
    // stays inside the image.
    const int w = 24, h = 18, r = 2;
    const GrayImage img = oracle::random_image(w, h, 11);
    GrayImage shifted(w, h, 0.0);
    for (int y = 0; y < h; ++y)
        for (int x = 1; x < w; ++x)
            shifted.at(x, y) = img.at(x - 1, y);
    const Kernel k = qdog::sample_qgauss_kernel({0.5, 1.0}, r);
    const ResponseMap a = qdog::convolve(img, k, BorderPolicy::zero);
    const ResponseMap b = qdog::convolve(shifted, k, BorderPolicy::zero);
    for (int y = r; y < h - r; ++y)
        for (int x = r + 1; x < w - r; ++x)
            EXPECT_EQ(b.at(x, y), a.at(x - 1, y));
}

// ---------------------------------------------------------------------------
// border handling
// ---------------------------------------------------------------------------

TEST(Convolve, BorderPoliciesByHand) {
    // Two identical rows [a, b, c] under a horizontal box average; the kernel
    // has no vertical extent, so the corner cases work out by hand per row.
    GrayImage img(3, 2);
    const double a = 0.1, b = 0.5, c = 0.9;
    for (int y = 0; y < 2; ++y) {
        img.at(0, y) = a;
        img.at(1, y) = b;
        img.at(2, y) = c;
    }
    Kernel k;
    k.radius = 1;
    k.weights.assign(9, 0.0);
    k.weights[3] = k.weights[4] = k.weights[5] = 1.0 / 3.0; // horizontal average

    const ResponseMap rep = qdog::convolve(img, k, BorderPolicy::replicate);
    EXPECT_NEAR(rep.at(0, 0), (a + a + b) / 3.0, 1e-15);
    EXPECT_NEAR(rep.at(1, 0), (a + b + c) / 3.0, 1e-15);
    EXPECT_NEAR(rep.at(2, 0), (b + c + c) / 3.0, 1e-15);

    const ResponseMap ref = qdog::convolve(img, k, BorderPolicy::reflect);
    // reflect about the pixel edge: index -1 -> 0, index 3 -> 2.
    EXPECT_NEAR(ref.at(0, 0), (a + a + b) / 3.0, 1e-15);
    EXPECT_NEAR(ref.at(2, 0), (b + c + c) / 3.0, 1e-15);

    const ResponseMap zer = qdog::convolve(img, k, BorderPolicy::zero);
    EXPECT_NEAR(zer.at(0, 0), (0.0 + a + b) / 3.0, 1e-15);
    EXPECT_NEAR(zer.at(2, 0), (b + c + 0.0) / 3.0, 1e-15);
}

TEST(Convolve, ZeroSumKernelIgnoresDCOnEveryBorder) {
    // Add a constant to the image: interior responses must not move (and
    // replicate/reflect borders also absorb the shift).
    const GrayImage img = oracle::random_image(18, 18, 23);
    GrayImage lifted = img;
    for (double& p : lifted.pixels)
        p = p * 0.5 + 0.25;
    GrayImage scaled = img;
    for (double& p : scaled.pixels)
        p = p * 0.5;
    const Kernel dog = qdog::dog_kernel(1.5, 1.0, 1.0, 3);
    for (BorderPolicy bp : {BorderPolicy::replicate, BorderPolicy::reflect}) {
        const ResponseMap rl = qdog::convolve(lifted, dog, bp);
        const ResponseMap rs = qdog::convolve(scaled, dog, bp);
        for (std::size_t i = 0; i < rl.values.size(); ++i)
            EXPECT_NEAR(rl.values[i], rs.values[i], 1e-12);
    }
}

// ---------------------------------------------------------------------------
// against the quadruple-loop reference
// ---------------------------------------------------------------------------

TEST(Convolve, MatchesBruteForceReference) {
    const BorderPolicy policies[] = {BorderPolicy::replicate, BorderPolicy::reflect,
                                     BorderPolicy::zero};
    for (int trial = 0; trial < 20; ++trial) {
        const GrayImage img = oracle::random_image(16, 16, 1000 + trial);
        const int radius = 1 + trial % 3;
        const double q = -2.0 + 0.45 * trial;
        Kernel k;
        if (trial % 2 == 0)
            k = qdog::sample_qgauss_kernel({std::min(q, 2.6), 0.8 + 0.1 * (trial % 5)},
                                           radius);
        else
            k = qdog::dog_kernel(1.2 + 0.05 * trial, 0.7, std::min(q, 2.6), radius);
        const BorderPolicy bp = policies[trial % 3];
        const ResponseMap fast = qdog::convolve(img, k, bp);
        const ResponseMap slow = oracle::convolve_reference(img, k, bp);
        for (std::size_t i = 0; i < fast.values.size(); ++i)
            ASSERT_NEAR(fast.values[i], slow.values[i], 1e-12)
                << "trial " << trial << ", pixel " << i;
    }
}

TEST(Convolve, ThreadCountDoesNotChangeBits) {
    const GrayImage img = oracle::random_image(33, 29, 5);
    const Kernel k = qdog::dog_kernel(1.6, 1.0, 1.0, 4);
    const ResponseMap seq =
        qdog::detail::convolve_with_threads(img, k, BorderPolicy::replicate, 1);
    const ResponseMap par =
        qdog::detail::convolve_with_threads(img, k, BorderPolicy::replicate, 3);
    for (std::size_t i = 0; i < seq.values.size(); ++i)
        EXPECT_EQ(seq.values[i], par.values[i]);
}

TEST(Convolve, RejectsOversizedKernels) {
    const GrayImage img(5, 9, 0.5);
    const Kernel k = qdog::sample_qgauss_kernel({1.0, 3.0}, 5); // side 11 > 2*5
    EXPECT_THROW(qdog::convolve(img, k), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// separable fast path
// ---------------------------------------------------------------------------

TEST(Separable, MatchesDense2DGaussian) {
    const GrayImage img = oracle::random_image(64, 64, 77);
    const int radius = 8;
    const Kernel dense = qdog::sample_qgauss_kernel({1.0, 2.5}, radius);
    for (BorderPolicy bp : {BorderPolicy::replicate, BorderPolicy::reflect, BorderPolicy::zero}) {
        const ResponseMap two_pass = qdog::convolve_separable(img, {1.0, 2.5}, radius, bp);
        const ResponseMap direct = qdog::convolve(img, dense, bp);
        for (std::size_t i = 0; i < direct.values.size(); ++i)
            ASSERT_NEAR(two_pass.values[i], direct.values[i], 1e-9) << "pixel " << i;
    }
}

TEST(Separable, RefusesNonSeparableShapes) {
    const GrayImage img(8, 8, 0.5);
    EXPECT_THROW(qdog::convolve_separable(img, {2.0, 1.0}, 2), std::invalid_argument);
    EXPECT_THROW(qdog::convolve_separable(img, {0.5, 1.0}, 2), std::invalid_argument);
}

} // namespace
