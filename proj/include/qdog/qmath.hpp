#pragma once

/**
 * @file qmath.hpp
 * @brief Scalar math for q-Gaussian (Tsallis) kernels.
 *
 * The q-Gaussian generalizes the normal density through the q-exponential
 *
 *     exp_q(x) = [1 + (1-q) x]^(1/(1-q)),   exp_1(x) = exp(x),
 *
 * which is cut off to 0 as soon as the bracket becomes non-positive.  For
 * q < 1 the resulting density has compact support |x| < sigma*sqrt(2/(1-q));
 * for q = 1 it is the ordinary Gaussian; for 1 < q < 3 it has power-law
 * tails.  At q >= 3 the density is no longer normalizable and every routine
 * here rejects it.
 */

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qdog {

/// Shape (q) and width (sigma) of a q-Gaussian.  q must be < 3, sigma > 0.
struct QParams {
    double q = 1.0;
    double sigma = 1.0;
};

/// Throws std::domain_error unless p is a usable parameter set.
inline void validate(const QParams& p) {
    if (!(p.sigma > 0.0))
        throw std::domain_error("qdog: sigma must be positive");
    if (!(p.q < 3.0))
        throw std::domain_error("qdog: q must be less than 3 (density is not normalizable)");
}

/// Gamma function on the positive reals.  Arguments <= 0 (and NaN) are
/// rejected; poles and the reflection formula are never needed here because
/// every internal caller passes a positive argument.
inline double gamma(double x) {
    if (!(x > 0.0))
        throw std::domain_error("qdog: gamma requires a positive argument");
    return std::tgamma(x);
}

namespace detail {

/// Gamma(a)/Gamma(b) for positive a, b.  Falls back to lgamma when either
/// argument is large enough to overflow tgamma (|Gamma| > DBL_MAX above
/// ~171.6), which happens for q within ~1/170 of 1 in c_q below.
inline double gamma_ratio(double a, double b) {
    if (a < 170.0 && b < 170.0)
        return gamma(a) / gamma(b);
    return std::exp(std::lgamma(a) - std::lgamma(b));
}

} // namespace detail

/// q-exponential exp_q(x).  Exactly std::exp at q = 1; otherwise the power
/// form with the Tsallis cutoff (0 once the bracket is <= 0).
inline double q_exp(double x, double q) {
    if (q == 1.0)
        return std::exp(x);
    const double one_minus_q = 1.0 - q;
    const double u = one_minus_q * x;
    if (1.0 + u <= 0.0)
        return 0.0;
    // exp(log1p(u)/(1-q)) keeps the q -> 1 limit smooth where (1+u)^(1/(1-q))
    // would lose every significant digit of the tiny exponent base.
    return std::exp(std::log1p(u) / one_minus_q);
}

/// Normalization constant C_q of the 1D q-Gaussian, i.e. the value making
///
///     G_q(x) = exp_q(-x^2 / (2 sigma^2)) / (C_q sqrt(2) sigma)
///
/// integrate to 1 over the real line.  Three regimes:
///
///     q < 1:      2 sqrt(pi) Gamma(1/(1-q))
///                 ------------------------------------------------
///                 (3-q) sqrt(1-q) Gamma((3-q)/(2(1-q)))
///
///     q = 1:      sqrt(pi)
///
///     1 < q < 3:  sqrt(pi) Gamma((3-q)/(2(q-1)))
///                 ---------------------------------
///                 sqrt(q-1) Gamma(1/(q-1))
inline double c_q(double q) {
    if (!(q < 3.0))
        throw std::domain_error("qdog: c_q requires q < 3");
    const double pi = std::numbers::pi;
    if (q == 1.0)
        return std::sqrt(pi);
    if (q < 1.0) {
        const double one_minus_q = 1.0 - q;
        const double ratio = detail::gamma_ratio(1.0 / one_minus_q,
                                                 (3.0 - q) / (2.0 * one_minus_q));
        return 2.0 * std::sqrt(pi) * ratio / ((3.0 - q) * std::sqrt(one_minus_q));
    }
    const double q_minus_one = q - 1.0;
    const double ratio = detail::gamma_ratio((3.0 - q) / (2.0 * q_minus_one),
                                             1.0 / q_minus_one);
    return std::sqrt(pi) * ratio / std::sqrt(q_minus_one);
}

/// Unit-mass 1D Gaussian density with mean mu and width sigma.
inline double gaussian_1d(double x, double mu, double sigma) {
    if (!(sigma > 0.0))
        throw std::domain_error("qdog: sigma must be positive");
    const double d = x - mu;
    const double two_pi = 2.0 * std::numbers::pi;
    return std::exp(-(d * d) / (2.0 * sigma * sigma)) / std::sqrt(two_pi * sigma * sigma);
}

/// Second derivative of the 1D Gaussian (the Ricker / "Mexican hat" profile):
/// negative at the origin, zero exactly at |x| = sigma, positive beyond.
inline double ricker(double x, double sigma) {
    if (!(sigma > 0.0))
        throw std::domain_error("qdog: sigma must be positive");
    const double s2 = sigma * sigma;
    const double two_pi = 2.0 * std::numbers::pi;
    return (x * x - s2) / (s2 * s2) *
           std::exp(-(x * x) / (2.0 * s2)) / std::sqrt(two_pi * s2);
}

/// Unit-mass isotropic 2D Gaussian density centered at the origin.
inline double gaussian_2d(double x, double y, double sigma) {
    if (!(sigma > 0.0))
        throw std::domain_error("qdog: sigma must be positive");
    const double s2 = sigma * sigma;
    const double r2 = x * x + y * y;
    return std::exp(-r2 / (2.0 * s2)) / (2.0 * std::numbers::pi * s2);
}

/// Laplacian of the 2D Gaussian:
///
///     LoG(x, y) = -1/(pi sigma^4) [1 - r^2/(2 sigma^2)] exp(-r^2/(2 sigma^2))
///
/// Negative at the center, zero on the circle r^2 = 2 sigma^2, positive
/// outside it.
inline double log_2d(double x, double y, double sigma) {
    if (!(sigma > 0.0))
        throw std::domain_error("qdog: sigma must be positive");
    const double s2 = sigma * sigma;
    const double r2 = x * x + y * y;
    const double bracket = 1.0 - r2 / (2.0 * s2);
    return -bracket * std::exp(-r2 / (2.0 * s2)) / (std::numbers::pi * s2 * s2);
}

/// Unit-mass 1D q-Gaussian density.  Reduces exactly to gaussian_1d at q = 1
/// and vanishes identically outside the compact support when q < 1.
inline double qgauss_1d(double x, const QParams& p) {
    validate(p);
    if (p.q == 1.0)
        return gaussian_1d(x, 0.0, p.sigma);
    const double s2 = p.sigma * p.sigma;
    return q_exp(-(x * x) / (2.0 * s2), p.q) / (c_q(p.q) * std::sqrt(2.0 * s2));
}

/// Unit-mass isotropic 2D q-Gaussian density (the 1D normalization squared);
/// reduces exactly to gaussian_2d at q = 1.  Not separable for q != 1.
inline double qgauss_2d(double x, double y, const QParams& p) {
    validate(p);
    if (p.q == 1.0)
        return gaussian_2d(x, y, p.sigma);
    const double s2 = p.sigma * p.sigma;
    const double cq = c_q(p.q);
    return q_exp(-(x * x + y * y) / (2.0 * s2), p.q) / (2.0 * cq * cq * s2);
}

} // namespace qdog
