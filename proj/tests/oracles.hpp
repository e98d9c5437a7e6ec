// Reference values computed independently of the library: long-double series
// for the error function and Boost quadrature for integrals.
#pragma once

#include <cmath>
#include <functional>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracle {

inline constexpr long double kPiL = 3.141592653589793238462643383279502884L;

/// erf by its Maclaurin series; accurate for |x| <= 3 in long double.
inline long double erf_series(long double x) {
    long double term = x;
    long double sum = x;
    for (int n = 1; n < 200; ++n) {
        term *= -x * x / n;
        const long double add = term / (2 * n + 1);
        sum += add;
        if (std::fabs(add) < 1e-24L * std::fabs(sum)) break;
    }
    return 2.0L / std::sqrt(kPiL) * sum;
}

/// erfc by Lentz's continued fraction; accurate for x >= 2.
inline long double erfc_cf(long double x) {
    // erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    const long double tiny = 1e-300L;
    long double f = x;
    long double c = x;
    long double d = 0.0L;
    for (int k = 1; k < 5000; ++k) {
        const long double a = k / 2.0L;
        d = x + a * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = x + a / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0L / d;
        const long double delta = c * d;
        f *= delta;
        if (std::fabs(delta - 1.0L) < 1e-22L) break;
    }
    return std::exp(-x * x) / std::sqrt(kPiL) / f;
}

inline long double erfc(long double x) {
    if (x < 0) return 2.0L - erfc(-x);
    if (x < 2.5L) return 1.0L - erf_series(x);
    return erfc_cf(x);
}

inline double phi(double x) { return static_cast<double>(std::exp(-0.5L * x * x) / std::sqrt(2 * kPiL)); }

inline double Phi(double x) {
    return static_cast<double>(0.5L * erfc(-static_cast<long double>(x) / std::sqrt(2.0L)));
}

inline double upper(double x) {
    return static_cast<double>(0.5L * erfc(static_cast<long double>(x) / std::sqrt(2.0L)));
}

/// Mills ratio as a ratio of oracle tail and density.
inline double mills(double t) {
    const long double tl = t;
    return static_cast<double>(0.5L * erfc(tl / std::sqrt(2.0L)) /
                               (std::exp(-0.5L * tl * tl) / std::sqrt(2 * kPiL)));
}

/// Integral over a finite range, adaptive Gauss-Kronrod.
inline double quad(const std::function<double(double)>& f, double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-13);
}

/// Integral with endpoint singularities on a finite range.
inline double quad_singular(const std::function<double(double)>& f, double a, double b) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    return integrator.integrate(f, a, b, 1e-12);
}

/// Integral over [a, +inf).
inline double quad_half_line(const std::function<double(double)>& f, double a) {
    boost::math::quadrature::exp_sinh<double> integrator;
    return integrator.integrate([&](double t) { return f(a + t); }, 0.0,
                                std::numeric_limits<double>::infinity(), 1e-12);
}

/// Voigt density from its normal variance mixture: p(u) = E[phi(u; 0, L)]
/// with L ~ Levy(sigma^2, gamma^2).
inline double voigt_pdf_mixture(double gamma, double sigma, double u) {
    const double loc = sigma * sigma;
    const double scale = gamma * gamma;
    auto integrand = [&](double w) {  // w = L - loc > 0
        if (w <= 0 || scale / (2 * w) > 700) return 0.0;
        const double levy = std::sqrt(scale / (2 * static_cast<double>(kPiL))) *
                            std::exp(-scale / (2 * w)) / (w * std::sqrt(w));
        const double v = loc + w;
        const double normal = std::exp(-0.5 * u * u / v) / std::sqrt(2 * static_cast<double>(kPiL) * v);
        return levy * normal;
    };
    // w = exp(y): smooth, single-humped integrand over a finite y window
    const double lo = std::log(scale) - 10.0;
    const double hi = std::log(scale + loc + u * u) + 60.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double y) {
            const double w = std::exp(y);
            return integrand(w) * w;
        },
        lo, hi, 20, 1e-13);
}

/// Moment of Normal(m, s^2) truncated below at 0 by direct quadrature.
inline double truncnorm_moment(double m, double s, int order) {
    auto density = [&](double x) { return std::exp(-0.5 * ((x - m) / s) * ((x - m) / s)); };
    const double hi = std::max(0.0, m) + 40 * s;
    const double z = quad(density, 0.0, hi);
    return quad([&](double x) { return std::pow(x, order) * density(x); }, 0.0, hi) / z;
}

}  // namespace oracle
