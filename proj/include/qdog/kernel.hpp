#pragma once

/**
 * @file kernel.hpp
 * @brief Discrete kernels sampled from q-Gaussian and LoG profiles.
 *
 * Kernels are square (2r+1)^2 grids sampled at integer offsets.  A smoothing
 * kernel is normalized to sum exactly 1; difference (dog) and Laplacian (log)
 * kernels sum to 0 so that constant regions produce zero response.
 */

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "qmath.hpp"

namespace qdog {

enum class KernelKind { qgauss, dog, log };

/// Square convolution kernel with odd side 2*radius + 1, weights stored
/// row-major from offset (-radius, -radius).  sigma2 is 0 unless kind == dog.
struct Kernel {
    int radius = 0;
    KernelKind kind = KernelKind::qgauss;
    double q = 1.0;
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    std::vector<double> weights;

    int side() const { return 2 * radius + 1; }

    /// Weight at column offset dx, row offset dy, each in [-radius, radius].
    double at(int dx, int dy) const {
        return weights[static_cast<std::size_t>(dy + radius) * side() + (dx + radius)];
    }
};

namespace detail {

/// Compensated (Neumaier) summation: exact enough to certify kernel sums at
/// the 1e-12 level even for 257x257 grids.
inline double neumaier_sum(const std::vector<double>& v) {
    double sum = 0.0;
    double comp = 0.0;
    for (double x : v) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    return sum + comp;
}

/// Adaptive Simpson quadrature, plain recursive bisection.
inline double adaptive_simpson(const std::function<double(double)>& f,
                               double a, double b, double fa, double fm, double fb,
                               double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12, int depth = 40) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, depth);
}

} // namespace detail

/// Maximum radius ever returned for heavy-tailed kernels.
inline constexpr int kMaxKernelRadius = 128;

/// Radius (in pixels) that captures "enough" of the 1D q-Gaussian:
///  - q < 1: the support edge sigma*sqrt(2/(1-q)), rounded up, capped;
///  - q = 1: the usual 3-sigma rule;
///  - q > 1: smallest r whose truncated mass reaches 1 - epsilon, capped at
///    kMaxKernelRadius (power-law tails can otherwise demand unbounded r).
/// Always at least 1.
inline int support_radius(const QParams& p, double epsilon = 1e-3) {
    validate(p);
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("qdog: support_radius epsilon must lie in (0, 1)");
    if (p.q < 1.0) {
        const double edge = p.sigma * std::sqrt(2.0 / (1.0 - p.q));
        int r = static_cast<int>(std::ceil(edge));
        if (r < 1) r = 1;
        return r < kMaxKernelRadius ? r : kMaxKernelRadius;
    }
    if (p.q == 1.0) {
        const int r = static_cast<int>(std::ceil(3.0 * p.sigma));
        return r > 1 ? r : 1;
    }
    const auto density = [&p](double x) { return qgauss_1d(x, p); };
    const double target = 0.5 * (1.0 - epsilon); // one-sided mass, by symmetry
    double mass = 0.0;
    for (int r = 1; r <= kMaxKernelRadius; ++r) {
        mass += detail::integrate(density, static_cast<double>(r - 1),
                                  static_cast<double>(r));
        if (mass >= target)
            return r;
    }
    return kMaxKernelRadius;
}

/// Smoothing kernel: 2D q-Gaussian sampled at integer offsets, then
/// renormalized so the weights sum to exactly 1 (compensated total).
inline Kernel sample_qgauss_kernel(const QParams& p, int radius) {
    validate(p);
    if (radius < 1)
        throw std::invalid_argument("qdog: kernel radius must be at least 1");
    Kernel k;
    k.radius = radius;
    k.kind = KernelKind::qgauss;
    k.q = p.q;
    k.sigma1 = p.sigma;
    const int side = k.side();
    k.weights.resize(static_cast<std::size_t>(side) * side);
    std::size_t idx = 0;
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx)
            k.weights[idx++] = qgauss_2d(dx, dy, p);
    const double total = detail::neumaier_sum(k.weights);
    if (!(total > 0.0))
        throw std::invalid_argument("qdog: kernel mass vanished; radius too small for these parameters");
    for (double& w : k.weights)
        w /= total;
    return k;
}

/// Difference-of-Gaussians kernel: normalized wide smoother minus normalized
/// narrow smoother, sharing q and radius.  Center weight is negative, a
/// surrounding ring positive, and the total is 0 by construction.
inline Kernel dog_kernel(double sigma1, double sigma2, double q, int radius) {
    if (!(sigma2 > 0.0))
        throw std::domain_error("qdog: sigma must be positive");
    if (!(sigma2 < sigma1))
        throw std::invalid_argument("qdog: dog_kernel requires sigma2 < sigma1");
    const Kernel wide = sample_qgauss_kernel({q, sigma1}, radius);
    const Kernel narrow = sample_qgauss_kernel({q, sigma2}, radius);
    Kernel k = wide;
    k.kind = KernelKind::dog;
    k.sigma2 = sigma2;
    for (std::size_t i = 0; i < k.weights.size(); ++i)
        k.weights[i] -= narrow.weights[i];
    return k;
}

/// Laplacian-of-Gaussian kernel: log_2d sampled at integer offsets, then
/// shifted by the sample mean so the weights sum to exactly 0.
inline Kernel log_kernel(double sigma, int radius) {
    if (!(sigma > 0.0))
        throw std::domain_error("qdog: sigma must be positive");
    if (radius < 1)
        throw std::invalid_argument("qdog: kernel radius must be at least 1");
    Kernel k;
    k.radius = radius;
    k.kind = KernelKind::log;
    k.q = 1.0;
    k.sigma1 = sigma;
    const int side = k.side();
    k.weights.resize(static_cast<std::size_t>(side) * side);
    std::size_t idx = 0;
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx)
            k.weights[idx++] = log_2d(dx, dy, sigma);
    const double mean = detail::neumaier_sum(k.weights) / static_cast<double>(k.weights.size());
    for (double& w : k.weights)
        w -= mean;
    return k;
}

} // namespace qdog
