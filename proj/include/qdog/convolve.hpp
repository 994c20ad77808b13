#pragma once

/**
 * @file convolve.hpp
 * @brief Dense 2D convolution and the separable Gaussian fast path.
 *
 * True convolution (the kernel is flipped), same-size output, with the border
 * handled by padding the source once per call.  Per output pixel the terms
 * are accumulated in a fixed order -- kernel rows, then columns -- so results
 * are bit-reproducible regardless of vectorization or the number of worker
 * threads: threads split output rows and every pixel's summation chain is
 * unchanged.
 *
 * Difference kernels (dog, log) are applied in contrast form: after the main
 * accumulation, the rounding residual of the weight total (summed in the same
 * per-pixel order) times the center sample is subtracted from each response.
 * In real arithmetic the correction term is exactly zero, because those
 * kernels sum to zero; in floats it removes the ~1e-16 bias a constant region
 * would otherwise receive, whose arbitrary sign could flip a zero crossing on
 * flat ground.  A constant region at a dyadic level then responds with an
 * exact 0.0 instead of noise.
 */

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <thread>
#include <vector>

#include "image.hpp"
#include "kernel.hpp"

namespace qdog {

enum class BorderPolicy { replicate, reflect, zero };

namespace detail {

/// Maps an out-of-range coordinate into [0, n) for the given policy.
/// reflect mirrors about the edge between pixels (-1 -> 0, n -> n-1); with
/// the kernel-size guard in convolve a single reflection always suffices.
inline int border_index(int i, int n, BorderPolicy border) {
    if (i >= 0 && i < n)
        return i;
    switch (border) {
    case BorderPolicy::replicate:
        return i < 0 ? 0 : n - 1;
    case BorderPolicy::reflect:
        return i < 0 ? -i - 1 : 2 * n - 1 - i;
    case BorderPolicy::zero:
        return -1;
    }
    return -1;
}

/// Source image extended by r pixels on every side.
inline std::vector<double> pad_image(const GrayImage& img, int r, BorderPolicy border) {
    const int pw = img.width + 2 * r;
    const int ph = img.height + 2 * r;
    std::vector<double> pad(static_cast<std::size_t>(pw) * ph, 0.0);
    for (int y = 0; y < ph; ++y) {
        const int sy = border_index(y - r, img.height, border);
        if (sy < 0)
            continue; // zero padding
        double* dst = &pad[static_cast<std::size_t>(y) * pw];
        const double* src = &img.pixels[static_cast<std::size_t>(sy) * img.width];
        for (int x = 0; x < pw; ++x) {
            const int sx = border_index(x - r, img.width, border);
            dst[x] = sx < 0 ? 0.0 : src[sx];
        }
    }
    return pad;
}

/// Convolves rows [y0, y1) of the output.  The x-loop is innermost so the
/// compiler can vectorize across independent per-pixel accumulators without
/// reordering any pixel's own sum.
inline void convolve_rows(const std::vector<double>& pad, int pw,
                          const std::vector<double>& flipped, int side,
                          double* out, int w, int y0, int y1) {
    for (int y = y0; y < y1; ++y) {
        double* acc = out + static_cast<std::size_t>(y) * w;
        std::fill(acc, acc + w, 0.0);
        for (int j = 0; j < side; ++j) {
            const double* krow = &flipped[static_cast<std::size_t>(j) * side];
            const double* srow = &pad[static_cast<std::size_t>(y + j) * pw];
            for (int i = 0; i < side; ++i) {
                const double kv = krow[i];
                const double* s = srow + i;
                for (int x = 0; x < w; ++x)
                    acc[x] += kv * s[x];
            }
        }
    }
}

inline ResponseMap convolve_with_threads(const GrayImage& img, const Kernel& k,
                                         BorderPolicy border, unsigned threads) {
    const int w = img.width;
    const int h = img.height;
    const int r = k.radius;
    const int side = k.side();
    if (side > 2 * std::min(w, h))
        throw std::invalid_argument("qdog: kernel too large for this image "
                                    "(side must be <= twice the smaller dimension)");

    // Flip the kernel once; for the symmetric kernels built by this library
    // the flip is a no-op, but convolve stays a true convolution for any K.
    std::vector<double> flipped(k.weights.size());
    for (int j = 0; j < side; ++j)
        for (int i = 0; i < side; ++i)
            flipped[static_cast<std::size_t>(j) * side + i] =
                k.weights[static_cast<std::size_t>(side - 1 - j) * side + (side - 1 - i)];

    const std::vector<double> pad = pad_image(img, r, border);
    const int pw = w + 2 * r;

    ResponseMap out(w, h);
    const unsigned n = std::max(1u, std::min(threads, static_cast<unsigned>(h)));
    if (n == 1) {
        convolve_rows(pad, pw, flipped, side, out.values.data(), w, 0, h);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n);
        const int chunk = (h + static_cast<int>(n) - 1) / static_cast<int>(n);
        for (unsigned t = 0; t < n; ++t) {
            const int y0 = static_cast<int>(t) * chunk;
            const int y1 = std::min(h, y0 + chunk);
            if (y0 >= y1)
                break;
            pool.emplace_back(convolve_rows, std::cref(pad), pw, std::cref(flipped), side,
                              out.values.data(), w, y0, y1);
        }
        for (std::thread& th : pool)
            th.join();
    }

    // Contrast form for zero-sum kernels (see the file comment): remove the
    // weight-total residual, summed in the per-pixel accumulation order.
    if (k.kind == KernelKind::dog || k.kind == KernelKind::log) {
        double residual = 0.0;
        for (const double v : flipped)
            residual += v;
        for (std::size_t p = 0; p < out.values.size(); ++p)
            out.values[p] -= residual * img.pixels[p];
    }
    return out;
}

} // namespace detail

/// Convolves an image with a square kernel.  Output has the image's shape.
/// Small jobs stay on the calling thread; large ones split output rows
/// across hardware threads (bit-identical either way).
inline ResponseMap convolve(const GrayImage& img, const Kernel& k,
                            BorderPolicy border = BorderPolicy::replicate) {
    const double work = static_cast<double>(img.width) * img.height *
                        k.side() * k.side();
    const unsigned threads =
        work < 4.0e7 ? 1u : std::thread::hardware_concurrency();
    return detail::convolve_with_threads(img, k, border, threads);
}

/// Separable smoothing for the ordinary Gaussian only (q-Gaussians with
/// q != 1 do not factor into 1D passes).  Matches convolve with the 2D q = 1
/// kernel of the same radius to ~1e-9 (the two paths round differently).
inline ResponseMap convolve_separable(const GrayImage& img, const QParams& p, int radius,
                                      BorderPolicy border = BorderPolicy::replicate) {
    validate(p);
    if (p.q != 1.0)
        throw std::invalid_argument("qdog: convolve_separable requires q = 1; "
                                    "q-Gaussian kernels with q != 1 are not separable");
    if (radius < 1)
        throw std::invalid_argument("qdog: kernel radius must be at least 1");
    const int w = img.width;
    const int h = img.height;
    if (2 * radius + 1 > 2 * std::min(w, h))
        throw std::invalid_argument("qdog: kernel too large for this image "
                                    "(side must be <= twice the smaller dimension)");

    // Normalized 1D taps, already flipped (symmetric, so flipping is moot).
    const int side = 2 * radius + 1;
    std::vector<double> taps(static_cast<std::size_t>(side));
    for (int i = 0; i < side; ++i)
        taps[static_cast<std::size_t>(i)] = gaussian_1d(i - radius, 0.0, p.sigma);
    const double total = detail::neumaier_sum(taps);
    for (double& t : taps)
        t /= total;

    // Horizontal pass.
    ResponseMap mid(w, h);
    {
        std::vector<double> padrow(static_cast<std::size_t>(w + 2 * radius));
        for (int y = 0; y < h; ++y) {
            const double* src = &img.pixels[static_cast<std::size_t>(y) * w];
            for (int x = 0; x < w + 2 * radius; ++x) {
                const int sx = detail::border_index(x - radius, w, border);
                padrow[static_cast<std::size_t>(x)] = sx < 0 ? 0.0 : src[sx];
            }
            double* dst = &mid.values[static_cast<std::size_t>(y) * w];
            for (int x = 0; x < w; ++x) {
                double acc = 0.0;
                for (int i = 0; i < side; ++i)
                    acc += taps[static_cast<std::size_t>(i)] * padrow[static_cast<std::size_t>(x + i)];
                dst[x] = acc;
            }
        }
    }

    // Vertical pass over the intermediate rows.
    ResponseMap out(w, h);
    for (int y = 0; y < h; ++y) {
        double* acc = &out.values[static_cast<std::size_t>(y) * w];
        for (int i = 0; i < side; ++i) {
            const int sy = detail::border_index(y + i - radius, h, border);
            const double kv = taps[static_cast<std::size_t>(i)];
            if (sy < 0)
                continue; // zero padding contributes nothing
            const double* srow = &mid.values[static_cast<std::size_t>(sy) * w];
            for (int x = 0; x < w; ++x)
                acc[x] += kv * srow[x];
        }
    }
    return out;
}

} // namespace qdog
