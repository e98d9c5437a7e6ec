#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "voigt/distributions.hpp"
#include "voigt/error.hpp"

using namespace voigt;

namespace {

template <class F>
std::vector<double> draws(std::size_t n, RngStream rng, F&& f) {
    std::vector<double> out(n);
    for (auto& x : out) x = f(rng);
    return out;
}

std::vector<double> sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v;
}

double mean(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double median(std::vector<double> v) {
    std::nth_element(v.begin(), v.begin() + static_cast<long>(v.size() / 2), v.end());
    return v[v.size() / 2];
}

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode{};
}

/// Closed-form dual mixing density written out independently.
double dual_mixing_reference(double gamma, double sigma, double v) {
    const double s2 = sigma * sigma;
    if (v <= 0 || v >= 1 / s2) return 0.0;
    const double a = gamma / s2;
    const double w = 1 / s2 - v;
    return a / std::sqrt(2 * kPi) * std::pow(w, -1.5) * std::exp(-a * a / (2 * w)) /
           (2 * oracle::upper(gamma / sigma));
}

}  // namespace

TEST_CASE("rng streams are reproducible and distinct") {
    RngStream a(7, 3), b(7, 3), c(7, 4);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        const double x = a.normal();
        CHECK(x == b.normal());
        differs |= x != c.normal();
    }
    CHECK(differs);
    RngStream u(1, 0);
    for (int i = 0; i < 10000; ++i) {
        const double x = u.uniform();
        CHECK((x >= 0.0 && x < 1.0));
        const double y = u.uniform_pos();
        CHECK((y > 0.0 && y <= 1.0));
    }
    CHECK(derive_seed(0, 100) != derive_seed(0, 500));
    CHECK(derive_seed(3, 100) == derive_seed(3, 100));
    CHECK(RngStream(5, 0).split(1).seed() == RngStream(5, 0).split(2).seed());
    CHECK(RngStream(5, 0).split(1).seed() != RngStream(5, 9).split(1).seed());
    CHECK(RngStream(5, 0).split(1).stream_id() == 1);
}

TEST_CASE("parameter validation") {
    CHECK(code_of([] { Voigt({0, 0.0, 1}); }) == ErrorCode::kInvalidArgument);
    CHECK(code_of([] { Voigt({0, 1, -1}); }) == ErrorCode::kInvalidArgument);
    CHECK(code_of([] { Voigt({NAN, 1, 1}); }) == ErrorCode::kInvalidArgument);
    CHECK(code_of([] { Levy({0, 0}); }) == ErrorCode::kInvalidArgument);
    CHECK(code_of([] { Cauchy(-1); }) == ErrorCode::kInvalidArgument);
    CHECK(code_of([] { DualVoigt({0.5, 1, 1}); }) == ErrorCode::kCenteredOnly);
    CHECK(code_of([] { DualMixing(DualMixingParams{{0, 1, 0}}); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("levy representation and cdf") {
    CHECK(Levy({0, 1}).from_normal(1.0) == 1.0);
    CHECK(Levy({1, 4}).from_normal(2.0) == 2.0);
    const Levy mix({1.0, 1.0});
    CHECK(mix.cdf(1.0) == 0.0);
    CHECK(mix.cdf(0.5) == 0.0);
    CHECK(mix.cdf(2.0) == doctest::Approx(2 * oracle::upper(1.0)).epsilon(1e-14));
    CHECK(std::abs(mix.cdf(2.0) - 0.317311) < 1e-6);
    CHECK(mix.cdf(1e300) == doctest::Approx(1.0));
    CHECK(mix.pdf(0.5) == 0.0);
    const double total = oracle::quad_singular([&](double x) { return mix.pdf(x); }, 1.0, 2.0) +
                         oracle::quad_half_line([&](double x) { return mix.pdf(x); }, 2.0);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    for (double x : {1.1, 1.7, 3.0, 50.0}) {
        const double q = oracle::quad_singular([&](double t) { return mix.pdf(t); }, 1.0, x);
        CHECK(mix.cdf(x) == doctest::Approx(q).epsilon(1e-9));
    }
}

TEST_CASE("levy sampler matches its cdf") {
    const Levy levy({0, 1});
    const auto xs = sorted(draws(100000, RngStream(11, 0), [&](RngStream& r) { return levy.sample(r); }));
    CHECK(xs.front() > 0.0);
    CHECK(ks_one_sample(xs, [&](double x) { return levy.cdf(x); }) < 0.0061);
}

TEST_CASE("cauchy sampler") {
    const Cauchy c(1.0);
    const auto xs = draws(100000, RngStream(12, 0), [&](RngStream& r) { return c.sample(r); });
    CHECK(std::abs(median(xs)) < 0.02);
    const double inside =
        static_cast<double>(std::count_if(xs.begin(), xs.end(), [](double x) { return std::abs(x) <= 1.0; })) /
        static_cast<double>(xs.size());
    CHECK(std::abs(inside - 0.5) < 3 * std::sqrt(0.25 / 1e5));

    const Cauchy c2(2.0);
    RngStream r1(4, 1), r2(4, 1);
    for (int i = 0; i < 1000; ++i) CHECK(c2.sample(r1) == 2.0 * c.sample(r2));
    CHECK(c.cdf(1.0) == doctest::Approx(0.75));
    CHECK(c.pdf(0.0) == doctest::Approx(1 / kPi));
}

TEST_CASE("truncated normal sampler and cdf") {
    for (const TruncNormSpec spec : {TruncNormSpec{-1, 1, 0}, TruncNormSpec{2, 0.5, 0},
                                     TruncNormSpec{-16, 1, 0}, TruncNormSpec{-0.5, 0.25, 0}}) {
        const TruncNormal tn(spec);
        const auto xs = sorted(draws(20000, RngStream(13, 0), [&](RngStream& r) { return tn.sample(r); }));
        CHECK(xs.front() >= 0.0);
        CHECK(ks_one_sample(xs, [&](double x) { return tn.cdf(x); }) < ks_critical_one_sample(xs.size()));
        for (double x : {0.1, 0.5, 2.0}) {
            const double q = oracle::quad([&](double t) { return tn.pdf(t); }, 0.0, x);
            CHECK(tn.cdf(x) == doctest::Approx(q).epsilon(1e-9));
        }
    }
}

TEST_CASE("voigt pdf at the mode matches the closed form") {
    for (double g : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        for (double s : {0.25, 0.5, 1.0, 2.0, 4.0}) {
            const Voigt v({0, g, s});
            const double closed = 2 * oracle::upper(g / s) * std::exp(g * g / (2 * s * s)) / (s * kSqrt2Pi);
            const double ref = g / s < 30 ? closed : oracle::mills(g / s) / (kPi * s);
            INFO("g=" << g << " s=" << s);
            CHECK(std::abs(v.pdf(0.0) - ref) < 1e-8 * ref);
            CHECK(v.mode_density() == doctest::Approx(ref).epsilon(1e-12));
            CHECK(v.pdf(0.0) <= 1 / (g * kPi) + 1e-10);
        }
    }
    CHECK(Voigt({0, 1, 1}).pdf(0.0) == doctest::Approx(0.20870928052036772).epsilon(1e-10));
}

TEST_CASE("voigt pdf agrees with the variance-mixture oracle") {
    for (auto [g, s] : {std::pair{1.0, 1.0}, std::pair{0.25, 2.0}, std::pair{4.0, 0.5}, std::pair{0.5, 0.25}}) {
        const Voigt v({0, g, s});
        for (double u : {0.0, 0.3, 1.0, 2.5, 7.0, 40.0, 1000.0}) {
            const double ref = oracle::voigt_pdf_mixture(g, s, u);
            INFO("g=" << g << " s=" << s << " u=" << u);
            CHECK(v.pdf(u) == doctest::Approx(ref).epsilon(1e-8));
        }
    }
}

TEST_CASE("voigt pdf symmetry, shift and cauchy limit") {
    const Voigt v({2.0, 1.0, 0.7});
    const Voigt c({0.0, 1.0, 0.7});
    for (double u : {0.1, 1.3, 5.0}) {
        CHECK(v.pdf(2.0 + u) == doctest::Approx(v.pdf(2.0 - u)).epsilon(1e-12));
        CHECK(v.pdf(2.0 + u) == doctest::Approx(c.pdf(u)).epsilon(1e-12));
    }
    const Voigt nearly_cauchy({0, 1.0, 1e-3});
    CHECK(nearly_cauchy.pdf(1.0) == doctest::Approx(1 / (2 * kPi)).epsilon(1e-4));
    CHECK(std::abs(1 / (2 * kPi) - 0.1591549) < 1e-7);
}

TEST_CASE("voigt pdf integrates to one") {
    const Voigt v({0, 1, 1});
    const double total = integrate([&](double u) { return v.pdf(u); }, -HUGE_VAL, HUGE_VAL);
    CHECK(std::abs(total - 1.0) < 1e-8);
}

TEST_CASE("voigt samplers") {
    const Voigt v0({0, 1, 1});
    const auto conv = draws(100000, RngStream(21, 0), [&](RngStream& r) { return v0.sample_conv(r); });
    CHECK(std::abs(median(conv)) < 0.03);

    const Voigt v5({5, 1, 1});
    RngStream a(3, 0), b(3, 0), c(3, 0), d(3, 0);
    for (int i = 0; i < 1000; ++i) {
        CHECK(v5.sample_conv(a) == v0.sample_conv(b) + 5.0);
        CHECK(v5.sample_mix(c) == v0.sample_mix(d) + 5.0);
    }
    RngStream e(9, 2), f(9, 2);
    CHECK(v0.sample_mix(e) == v0.sample_mix(f));

    const auto x = sorted(draws(10000, RngStream(22, 0), [&](RngStream& r) { return v0.sample_conv(r); }));
    const auto y = sorted(draws(10000, RngStream(22, 1), [&](RngStream& r) { return v0.sample_mix(r); }));
    CHECK(ks_two_sample(x, y) < 0.023);
    CHECK(v0.mixing().params().location == 1.0);
    CHECK(v0.mixing().params().scale == 1.0);
}

TEST_CASE("cauchy from the levy mixture") {
    for (double g : {0.5, 1.0, 2.0}) {
        const Cauchy c(g);
        const auto x = sorted(draws(10000, RngStream(23, 0), [&](RngStream& r) { return cauchy_via_levy_mixture(g, r); }));
        const auto y = sorted(draws(10000, RngStream(23, 1), [&](RngStream& r) { return c.sample(r); }));
        CHECK(ks_two_sample(x, y) < 0.023);
        CHECK(ks_one_sample(x, [&](double t) { return c.cdf(t); }) < ks_critical_one_sample(x.size()));
    }
}

TEST_CASE("dual voigt density") {
    const DualVoigt d({0, 1, 1});
    CHECK(d.pdf(0.0) == doctest::Approx(1 / (2 * oracle::mills(1.0))).epsilon(1e-13));
    CHECK(std::abs(d.pdf(0.0) - 0.76256763808) < 1e-10);
    CHECK(d.peak() == doctest::Approx(d.pdf(0.0)).epsilon(1e-15));
    for (auto [g, s] : {std::pair{1.0, 1.0}, std::pair{0.25, 4.0}, std::pair{4.0, 0.25}, std::pair{2.0, 0.5}}) {
        const DualVoigt dv({0, g, s});
        const double closed = s * oracle::phi(g / s) / (2 * oracle::upper(g / s)) * kSqrt2Pi / kSqrt2Pi;
        CHECK(dv.peak() == doctest::Approx(closed * 1.0).epsilon(1e-12));
        for (double u : {0.0, 0.2, 1.0, 3.0, 12.0}) {
            INFO("g=" << g << " s=" << s << " u=" << u);
            CHECK(dv.pdf(u) == dv.pdf(-u));
            const double shape = std::exp(-g * u - s * s * u * u / 2);
            if (shape < 1e-250) continue;  // below double range
            CHECK(dv.pdf(u) > 0.0);
            CHECK(dv.pdf(u) / dv.pdf(0.0) == doctest::Approx(shape).epsilon(1e-10));
            const double lhs = std::log(dv.pdf(u)) - std::log(dv.pdf(0.0));
            CHECK(lhs == doctest::Approx(-g * u - s * s * u * u / 2).epsilon(1e-12));
        }
        const double total = oracle::quad([&](double u) { return dv.pdf(u); }, -60 / s - 60, 60 / s + 60);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(std::abs(integrate([&](double u) { return dv.pdf(u); }, -HUGE_VAL, HUGE_VAL) - 1) < 1e-8);
    }
}

TEST_CASE("dual voigt peak threshold and normal limit") {
    CHECK(DualVoigt({0, 0.522, 0.522}).pdf(0.0) < kInvSqrt2Pi);
    CHECK(DualVoigt({0, 0.524, 0.524}).pdf(0.0) > kInvSqrt2Pi);
    const DualVoigt near_normal({0, 1e-8, 1.0});
    for (double u : {0.0, 1.0, 2.0}) {
        CHECK(std::abs(near_normal.pdf(u) - oracle::phi(u)) < 1e-6);
    }
}

TEST_CASE("dual voigt moments") {
    const DualVoigt d({0, 1, 1});
    CHECK(d.moment(1) == 0.0);
    CHECK(d.moment(3) == 0.0);
    CHECK(d.moment(0) == 1.0);
    CHECK(std::abs(d.moment(2) - 0.474865) < 1e-6);
    CHECK(std::abs(d.moment(4) - (10 - 6 * 1.525135)) < 1e-5);
    CHECK(code_of([&] { d.moment(9); }) == ErrorCode::kOrderTooHigh);
    for (auto [g, s] : {std::pair{1.0, 1.0}, std::pair{2.0, 0.5}, std::pair{0.25, 4.0}, std::pair{4.0, 1.0}}) {
        const DualVoigt dv({0, g, s});
        INFO("g=" << g << " s=" << s);
        CHECK(std::abs(dv.moment(2) - dv.second_moment_closed_form()) < 1e-10);
        CHECK(std::abs(dv.moment(4) - dv.fourth_moment_closed_form()) < 1e-10);
        for (int k : {2, 4, 6, 8}) {
            const double q = 2 * oracle::quad([&](double u) { return std::pow(u, k) * dv.pdf(u); }, 0, 80 / s + 10);
            CHECK(dv.moment(k) == doctest::Approx(q).epsilon(1e-8));
        }
    }
}

TEST_CASE("dual voigt reflect sampler") {
    const DualVoigt d({0, 1, 1});
    const auto xs = draws(100000, RngStream(31, 0), [&](RngStream& r) { return d.sample_reflect(r); });
    const double positive =
        static_cast<double>(std::count_if(xs.begin(), xs.end(), [](double x) { return x > 0; })) / 1e5;
    CHECK(std::abs(positive - 0.5) < 3 * std::sqrt(0.25 / 1e5));
    std::vector<double> abs_x(xs.size()), sq(xs.size());
    std::transform(xs.begin(), xs.end(), abs_x.begin(), [](double x) { return std::abs(x); });
    std::transform(xs.begin(), xs.end(), sq.begin(), [](double x) { return x * x; });
    const double m1 = oracle::truncnorm_moment(-1, 1, 1);
    const double m2 = oracle::truncnorm_moment(-1, 1, 2);
    CHECK(std::abs(mean(abs_x) - m1) < 3 * std::sqrt((m2 - m1 * m1) / 1e5));
    const double m4 = oracle::truncnorm_moment(-1, 1, 4);
    CHECK(std::abs(mean(sq) - d.moment(2)) < 3 * std::sqrt((m4 - m2 * m2) / 1e5));
}

TEST_CASE("dual voigt accept-reject") {
    const DualVoigt d({0, 1, 1});
    CHECK(d.accept_reject_step(0.7).value() == 0.7);
    CHECK(d.accept_reject_step(-2.5).value() == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK_FALSE(d.accept_reject_step(-1.0).has_value());
    CHECK_FALSE(d.accept_reject_step(0.0).has_value());
    CHECK(d.acceptance_probability() == doctest::Approx(2 * oracle::upper(1.0)).epsilon(1e-14));

    ProposalCounter counter;
    RngStream rng(32, 0);
    while (counter.proposals < 100000) d.sample_ar(rng, &counter);
    const double p = 2 * oracle::upper(1.0);
    CHECK(std::abs(counter.acceptance_rate() - p) < 3 * std::sqrt(p * (1 - p) / counter.proposals));
    CHECK(std::abs(p - 0.3173) < 1e-4);

    const auto x = sorted(draws(10000, RngStream(33, 0), [&](RngStream& r) { return d.sample_ar(r); }));
    const auto y = sorted(draws(10000, RngStream(33, 1), [&](RngStream& r) { return d.sample_reflect(r); }));
    CHECK(ks_two_sample(x, y) < 0.023);

    const DualVoigt hopeless({0, 40, 1});
    RngStream r(1, 1);
    CHECK(code_of([&] { hopeless.sample_ar(r); }) == ErrorCode::kProposalBudgetExceeded);
}

TEST_CASE("dual mixing density") {
    for (auto [g, s] : {std::pair{1.0, 1.0}, std::pair{0.5, 1.0}, std::pair{2.0, 0.5}, std::pair{0.25, 4.0}}) {
        const DualMixing m(DualMixingParams{{0, g, s}});
        const double top = 1 / (s * s);
        CHECK(m.support_upper() == top);
        CHECK(m.pdf(top) == 0.0);
        CHECK(m.pdf(-0.1) == 0.0);
        CHECK(m.pdf(0.0) == 0.0);
        for (double f : {0.01, 0.3, 0.6, 0.9, 0.999}) {
            INFO("g=" << g << " s=" << s << " f=" << f);
            CHECK(m.pdf(f * top) == doctest::Approx(dual_mixing_reference(g, s, f * top)).epsilon(1e-12));
        }
        const double total = oracle::quad_singular([&](double v) { return m.pdf(v); }, 0.0, top);
        CHECK(std::abs(total - 1) < 1e-9);
        CHECK(std::abs(integrate([&](double v) { return m.pdf(v); }, 0.0, top) - 1) < 1e-8);
        for (double f : {0.2, 0.5, 0.95}) {
            const double q = oracle::quad_singular([&](double v) { return m.pdf(v); }, 0.0, f * top);
            CHECK(m.cdf(f * top) == doctest::Approx(q).epsilon(1e-9));
        }
        CHECK(m.cdf(top) == 1.0);
        CHECK(m.cdf(0.0) == 0.0);
    }
}

TEST_CASE("dual mixing sampler") {
    const DualMixing m(DualMixingParams{{0, 1, 1}});
    ProposalCounter counter;
    RngStream rng(41, 0);
    std::vector<double> vs;
    while (counter.proposals < 100000) vs.push_back(m.sample(rng, &counter));
    for (double v : vs) CHECK((v > 0.0 && v < 1.0));
    const double p = 2 * oracle::upper(1.0);
    CHECK(std::abs(counter.acceptance_rate() - p) < 3 * std::sqrt(p * (1 - p) / counter.proposals));
    std::sort(vs.begin(), vs.end());
    CHECK(ks_one_sample(vs, [&](double v) { return m.cdf(v); }) < ks_critical_one_sample(vs.size()));

    for (auto [g, s] : {std::pair{0.25, 4.0}, std::pair{2.0, 0.5}, std::pair{4.0, 2.0}}) {
        const DualMixing mm(DualMixingParams{{0, g, s}});
        RngStream r(42, 0);
        for (int i = 0; i < 2000; ++i) {
            const double v = mm.sample(r);
            CHECK((v > 0.0 && v < mm.support_upper()));
        }
    }

    const DualVoigt d({0, 1, 1});
    const auto x = sorted(draws(10000, RngStream(43, 0), [&](RngStream& r) { return m.sample_scale_mixture(r); }));
    const auto y = sorted(draws(10000, RngStream(43, 1), [&](RngStream& r) { return d.sample_ar(r); }));
    CHECK(ks_two_sample(x, y) < 0.023);

    const auto levy = m.untruncated();
    CHECK(levy.params().location == 1.0);
    CHECK(levy.params().scale == 1.0);
    const DualMixing hopeless(DualMixingParams{{0, 40, 1}});
    RngStream r(1, 1);
    CHECK(code_of([&] { hopeless.sample(r); }) == ErrorCode::kProposalBudgetExceeded);
}

TEST_CASE("levy truncation identity") {
    for (double g : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        for (double s : {0.25, 0.5, 1.0, 2.0, 4.0}) {
            const Levy l({1 / (s * s), g * g / std::pow(s, 4)});
            CHECK(std::abs(l.cdf(2 / (s * s)) - 2 * (1 - std_normal_cdf(g / s))) < 1e-12);
        }
    }
}
