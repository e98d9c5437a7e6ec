#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <queue>
#include <sstream>
#include <vector>

#include "voigt/error.hpp"
#include "voigt/special.hpp"

namespace voigt {
namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T>
struct Segment {
    double a;
    double b;
    T value;
    double error;

    bool operator<(const Segment& other) const { return error < other.error; }
};

template <typename T, typename F>
Segment<T> gauss_kronrod(const F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const T fc = f(center);
    T kronrod = fc * kWgk[7];
    T gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const T sum = f(center - dx) + f(center + dx);
        kronrod += sum * kWgk[j];
        if (j % 2 == 1) gauss += sum * kWg[j / 2];
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

template <typename T, typename F>
QuadratureResult adaptive(const F& f, double a, double b, const QuadratureConfig& cfg, T* out) {
    std::priority_queue<Segment<T>> queue;
    auto first = gauss_kronrod<T>(f, a, b);
    T total = first.value;
    double total_error = first.error;
    queue.push(first);
    int subdivisions = 0;

    auto tolerance = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)); };
    while (total_error > tolerance()) {
        if (subdivisions >= cfg.max_subdivisions) {
            std::ostringstream msg;
            msg << "quadrature did not converge on [" << a << ", " << b << "] after "
                << subdivisions << " subdivisions (error estimate " << total_error << ")";
            throw Error(ErrorCode::kNonConvergence, msg.str());
        }
        const Segment<T> worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        auto left = gauss_kronrod<T>(f, worst.a, mid);
        auto right = gauss_kronrod<T>(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++subdivisions;
    }
    // Re-sum from the pieces to shed the drift of the running updates.
    T exact_total{};
    double exact_error = 0.0;
    while (!queue.empty()) {
        exact_total += queue.top().value;
        exact_error += queue.top().error;
        queue.pop();
    }
    *out = exact_total;
    QuadratureResult r;
    r.error = exact_error;
    r.subdivisions = subdivisions;
    return r;
}

template <typename T, typename F>
QuadratureResult integrate_any(const F& f, double lower, double upper,
                               const QuadratureConfig& cfg, T* out) {
    cfg.validate();
    if (std::isnan(lower) || std::isnan(upper)) {
        throw Error(ErrorCode::kInvalidArgument, "integration bounds must not be NaN");
    }
    if (lower == upper) {
        *out = T{};
        return {};
    }
    if (lower > upper) {
        auto r = integrate_any<T>(f, upper, lower, cfg, out);
        *out = -*out;
        return r;
    }
    const bool lo_inf = std::isinf(lower);
    const bool hi_inf = std::isinf(upper);
    if (!lo_inf && !hi_inf) return adaptive<T>(f, lower, upper, cfg, out);

    if (lo_inf && hi_inf) {
        // Fold onto [0, inf) and map.
        auto folded = [&f](double x) -> T {
            const double w = 1.0 - x;
            const double t = x / w;
            return (f(t) + f(-t)) / (w * w);
        };
        return adaptive<T>(folded, 0.0, 1.0, cfg, out);
    }
    if (hi_inf) {
        auto mapped = [&f, lower](double x) -> T {
            const double w = 1.0 - x;
            return f(lower + x / w) / (w * w);
        };
        return adaptive<T>(mapped, 0.0, 1.0, cfg, out);
    }
    auto mapped = [&f, upper](double x) -> T {
        const double w = 1.0 - x;
        return f(upper - x / w) / (w * w);
    };
    return adaptive<T>(mapped, 0.0, 1.0, cfg, out);
}

}  // namespace

void QuadratureConfig::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions < 1) {
        throw Error(ErrorCode::kInvalidArgument,
                    "quadrature tolerances must be positive and max_subdivisions >= 1");
    }
}

QuadratureResult integrate_detailed(const std::function<double(double)>& f, double lower,
                                    double upper, const QuadratureConfig& cfg) {
    double value = 0.0;
    QuadratureResult r = integrate_any<double>(f, lower, upper, cfg, &value);
    r.value = value;
    return r;
}

double integrate(const std::function<double(double)>& f, double lower, double upper,
                 const QuadratureConfig& cfg) {
    return integrate_detailed(f, lower, upper, cfg).value;
}

std::complex<double> integrate_complex(
    const std::function<std::complex<double>(double)>& f, double lower, double upper,
    const QuadratureConfig& cfg) {
    std::complex<double> value;
    integrate_any<std::complex<double>>(f, lower, upper, cfg, &value);
    return value;
}

}  // namespace voigt
