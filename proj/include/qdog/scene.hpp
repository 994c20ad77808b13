#pragma once

/**
 * @file scene.hpp
 * @brief Deterministic synthetic test scene (no RNG, no external assets).
 *
 * A gradient backdrop with a filled disc, a ring, two rectangles, a bar
 * grating and a thin diagonal line: enough contrast structure at several
 * scales to exercise edge detection across the whole q grid.
 */

#include <algorithm>
#include <cmath>

#include "image.hpp"

namespace qdog {

inline GrayImage make_synthetic_scene(int width = 512, int height = 512) {
    GrayImage img(width, height);
    const double w = width;
    const double h = height;
    const double unit = std::min(w, h);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            double v = 0.15 + 0.45 * (x + y) / (w + h); // diagonal backdrop

            const double dx1 = x - 0.32 * w, dy1 = y - 0.36 * h;
            if (dx1 * dx1 + dy1 * dy1 < 0.18 * unit * 0.18 * unit)
                v = 0.85; // filled disc

            const double dx2 = x - 0.72 * w, dy2 = y - 0.28 * h;
            const double r2 = dx2 * dx2 + dy2 * dy2;
            if (r2 > 0.10 * unit * 0.10 * unit && r2 < 0.14 * unit * 0.14 * unit)
                v = 0.05; // ring

            if (x > 0.12 * w && x < 0.44 * w && y > 0.62 * h && y < 0.80 * h)
                v = 0.70; // large rectangle
            if (x > 0.20 * w && x < 0.30 * w && y > 0.66 * h && y < 0.76 * h)
                v = 0.30; // inset rectangle

            if (x > 0.55 * w && x < 0.92 * w && y > 0.58 * h && y < 0.90 * h)
                v = (((x * 16) / width) % 2 == 0) ? 0.90 : 0.40; // bar grating

            if (std::abs(y - (0.5 * x + 0.08 * h)) < 0.004 * unit + 1.0)
                v = 0.95; // thin diagonal line

            img.at(x, y) = std::clamp(v, 0.0, 1.0);
        }
    }
    return img;
}

} // namespace qdog
