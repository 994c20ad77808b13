#pragma once

/**
 * @file image.hpp
 * @brief Raster containers shared by the I/O, filtering and edge stages.
 */

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qdog {

/// Grayscale raster with pixels normalized to [0, 1], row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, double fill = 0.0) : width(w), height(h) {
        if (w <= 0 || h <= 0)
            throw std::invalid_argument("qdog: image dimensions must be positive");
        pixels.assign(static_cast<std::size_t>(w) * h, fill);
    }

    double& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
};

/// Signed filter response, same shape as the image it came from.
struct ResponseMap {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    ResponseMap() = default;
    ResponseMap(int w, int h) : width(w), height(h) {
        if (w <= 0 || h <= 0)
            throw std::invalid_argument("qdog: response dimensions must be positive");
        values.assign(static_cast<std::size_t>(w) * h, 0.0);
    }

    double& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
};

/// Binary edge mask; nonzero marks an edge pixel.
struct EdgeMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> mask;

    EdgeMap() = default;
    EdgeMap(int w, int h) : width(w), height(h) {
        if (w <= 0 || h <= 0)
            throw std::invalid_argument("qdog: edge map dimensions must be positive");
        mask.assign(static_cast<std::size_t>(w) * h, 0);
    }

    std::uint8_t& at(int x, int y) { return mask[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t at(int x, int y) const { return mask[static_cast<std::size_t>(y) * width + x]; }

    std::size_t edge_count() const {
        std::size_t n = 0;
        for (std::uint8_t m : mask)
            n += (m != 0);
        return n;
    }
};

} // namespace qdog
