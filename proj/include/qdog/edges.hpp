#pragma once

/**
 * @file edges.hpp
 * @brief Zero-crossing extraction and the full DoG edge-detection pipeline.
 */

#include <optional>
#include <stdexcept>

#include "convolve.hpp"
#include "image.hpp"
#include "kernel.hpp"

namespace qdog {

/// Parameters of detect_edges.  sigma1 is the wider (outer) Gaussian and must
/// exceed sigma2; radius, when set, overrides the support_radius rule.
struct DetectParams {
    double q = 1.0;
    double sigma1 = 0.2;
    double sigma2 = 0.1;
    double threshold = 0.0;
    BorderPolicy border = BorderPolicy::replicate;
    std::optional<int> radius;
};

inline void validate(const DetectParams& p) {
    validate(QParams{p.q, p.sigma1});
    if (!(p.sigma2 > 0.0))
        throw std::domain_error("qdog: sigma must be positive");
    if (!(p.sigma2 < p.sigma1))
        throw std::invalid_argument("qdog: detection requires sigma2 < sigma1");
    if (!(p.threshold >= 0.0))
        throw std::invalid_argument("qdog: threshold must be non-negative");
    if (p.radius && *p.radius < 1)
        throw std::invalid_argument("qdog: kernel radius must be at least 1");
}

/// Marks pixels where the response changes sign across any of the four
/// neighbor pairs (horizontal, vertical, both diagonals).  A pair counts only
/// if both neighbors are in bounds, their signs are strictly opposite, and
/// the magnitude of their difference exceeds the threshold.
inline EdgeMap zero_cross(const ResponseMap& response, double threshold = 0.0) {
    if (!(threshold >= 0.0))
        throw std::invalid_argument("qdog: threshold must be non-negative");
    const int w = response.width;
    const int h = response.height;
    EdgeMap edges(w, h);
    static constexpr int pairs[4][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            bool hit = false;
            for (const auto& d : pairs) {
                const int x1 = x - d[0], y1 = y - d[1];
                const int x2 = x + d[0], y2 = y + d[1];
                if (x1 < 0 || x2 >= w || y1 < 0 || y1 >= h || y2 < 0 || y2 >= h)
                    continue;
                const double a = response.at(x1, y1);
                const double b = response.at(x2, y2);
                const bool opposite = (a > 0.0 && b < 0.0) || (a < 0.0 && b > 0.0);
                if (opposite && std::abs(a - b) > threshold) {
                    hit = true;
                    break;
                }
            }
            edges.at(x, y) = hit ? 1 : 0;
        }
    }
    return edges;
}

/// Full pipeline: build the q-Gaussian DoG kernel, convolve, extract zero
/// crossings.  The kernel radius follows support_radius of the wider Gaussian
/// (epsilon = 1e-3) unless overridden.
inline EdgeMap detect_edges(const GrayImage& img, const DetectParams& p) {
    validate(p);
    const int radius = p.radius ? *p.radius : support_radius({p.q, p.sigma1});
    const Kernel k = dog_kernel(p.sigma1, p.sigma2, p.q, radius);
    const ResponseMap response = convolve(img, k, p.border);
    return zero_cross(response, p.threshold);
}

} // namespace qdog
