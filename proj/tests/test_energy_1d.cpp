#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>

#include "freedisc/energy_1d.hpp"
#include "freedisc/numeric.hpp"

using namespace freedisc;

namespace {

AnalyticSignal1D heaviside(double h) {
    return AnalyticSignal1D([h](double x) { return x < 0.0 ? 0.0 : h; }, 0.0, 0.0);
}

AnalyticSignal1D clamped_ramp(double a) {
    return AnalyticSignal1D(
        [a](double x) { return x <= 0.0 ? 0.0 : (x >= 1.0 ? a : a * x); }, 0.0, 1.0);
}

} // namespace

TEST_SUITE("energy_1d") {

TEST_CASE("constant signals have zero energy") {
    AnalyticSignal1D c([](double) { return 3.0; }, 0.0, 0.0);
    CHECK(f_eps_1d(c, PhiEpsFamily::arctan_ms(), 0.25) == 0.0);
    Signal1D s(0.0, 0.1, std::vector<double>(32, 3.0));
    CHECK(f_eps_1d(s, PhiEpsFamily::power(2.0), 0.25) == 0.0);
}

TEST_CASE("heaviside with arctanMS hits the closed form") {
    auto fam = PhiEpsFamily::arctan_ms();
    for (double eps : {1.0, 0.1, 0.003}) {
        double v = f_eps_1d(heaviside(1.0), fam, eps);
        CHECK(v == doctest::Approx(std::atan(1.0 / eps)).epsilon(1e-12));
    }
}

TEST_CASE("clamped ramp with power(2) hits the closed form") {
    Quadrature1DOptions opt;
    opt.hx = 1e-4;
    for (double a : {1.0, 2.0}) {
        for (double eps : {0.3, 0.1}) {
            double v = f_eps_1d(clamped_ramp(a), PhiEpsFamily::power(2.0), eps,
                                Domain1D::whole_line(), opt);
            CHECK(v == doctest::Approx(a * a * (1.0 - eps / 3.0)).epsilon(1e-6));
        }
    }
}

TEST_CASE("sampled ramp matches the analytic one") {
    double a = 2.0, eps = 0.3;
    int n = 4001;
    double step = 3.0 / (n - 1);
    std::vector<double> vals(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = -1.0 + step * i;
        vals[static_cast<size_t>(i)] = x <= 0.0 ? 0.0 : (x >= 1.0 ? a : a * x);
    }
    Signal1D s(-1.0, step, std::move(vals));
    double v = f_eps_1d(s, PhiEpsFamily::power(2.0), eps);
    CHECK(v == doctest::Approx(a * a * (1.0 - eps / 3.0)).epsilon(1e-5));
}

TEST_CASE("sweep table: closed forms and monotone diagnostics") {
    auto fam = PhiEpsFamily::arctan_ms();
    SweepTable t = f_eps_1d_sweep(heaviside(1.0), fam, {1.0, 0.1, 0.01});
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[0].value == doctest::Approx(std::numbers::pi / 4.0));
    CHECK(t.rows[1].value == doctest::Approx(std::atan(10.0)));
    CHECK(t.rows[2].value == doctest::Approx(std::atan(100.0)));
    CHECK(t.nonDecreasing);
    CHECK_FALSE(t.nonIncreasing);

    SweepTable zero = f_eps_1d_sweep(AnalyticSignal1D([](double) { return 1.0; }, 0.0, 0.0),
                                     fam, {1.0, 0.5});
    for (const auto& row : zero.rows) CHECK(row.value == 0.0);
    CHECK_THROWS_AS(f_eps_1d_sweep(heaviside(1.0), fam, {}), std::domain_error);
}

TEST_CASE("upper bound against the limit on a ramp-plus-jump signal") {
    auto fam = PhiEpsFamily::constructed(PhiSpec::power(2.0), PsiSpec::power(0.5), 1.0, 512);
    // u: slope 1.5 on [0,1], jump of 2 at x = 0.4
    AnalyticSignal1D u(
        [](double x) {
            double base = x <= 0.0 ? 0.0 : (x >= 1.0 ? 1.5 : 1.5 * x);
            return base + (x >= 0.4 ? 2.0 : 0.0);
        },
        0.0, 1.0);
    double limit = 1.0 * 1.5 * 1.5 + std::sqrt(2.0);
    Quadrature1DOptions opt;
    for (double eps : {0.5, 0.2, 0.1}) {
        opt.hx = eps / 256.0;
        double v = f_eps_1d(u, fam, eps, Domain1D::whole_line(), opt);
        CHECK(v <= limit * (1.0 + 1e-4) + 1e-6);
    }
}

TEST_CASE("scale monotonicity F_{k delta} <= F_delta for the constructed family") {
    auto fam = PhiEpsFamily::constructed(PhiSpec::power(2.0), PsiSpec::power(0.5), 1.0, 256);
    AnalyticSignal1D u(
        [](double x) {
            if (x <= 0.0) return 0.0;
            if (x < 0.5) return 2.0 * x;
            if (x < 1.0) return 1.0 + 0.8;
            return 1.8;
        },
        0.0, 1.0);
    double delta = 0.1;
    Quadrature1DOptions opt;
    opt.hx = 1e-3;
    double fd = f_eps_1d(u, fam, delta, Domain1D::whole_line(), opt);
    for (int k : {2, 3, 4}) {
        double fkd = f_eps_1d(u, fam, k * delta, Domain1D::whole_line(), opt);
        CHECK(fkd <= fd + 1e-6 * (1.0 + fd));
    }
}

TEST_CASE("midpoint refinement shrinks the change by the expected order") {
    auto fam = PhiEpsFamily::power(2.0);
    double eps = 0.3;
    Quadrature1DOptions o1, o2, o3;
    o1.hx = 1e-2;
    o2.hx = 5e-3;
    o3.hx = 2.5e-3;
    double v1 = f_eps_1d(clamped_ramp(1.0), fam, eps, Domain1D::whole_line(), o1);
    double v2 = f_eps_1d(clamped_ramp(1.0), fam, eps, Domain1D::whole_line(), o2);
    double v3 = f_eps_1d(clamped_ramp(1.0), fam, eps, Domain1D::whole_line(), o3);
    double d1 = std::abs(v1 - v2);
    double d2 = std::abs(v2 - v3);
    CHECK(d2 <= d1 + 1e-12);
}

TEST_CASE("interval domains and domain errors") {
    auto fam = PhiEpsFamily::arctan_ms();
    // integrand of the heaviside is supported on [-eps, 0)
    double eps = 0.25;
    double inside = f_eps_1d(heaviside(1.0), fam, eps, Domain1D::interval(-1.0, 1.0));
    CHECK(inside == doctest::Approx(std::atan(1.0 / eps)).epsilon(1e-12));
    double outside = f_eps_1d(heaviside(1.0), fam, eps, Domain1D::interval(1.0, 2.0));
    CHECK(outside == 0.0);
    CHECK_THROWS_AS(f_eps_1d(heaviside(1.0), fam, 0.0), std::domain_error);
    CHECK_THROWS_AS(f_eps_1d(heaviside(1.0), fam, 0.1, Domain1D::interval(1.0, 1.0)),
                    std::domain_error);
}

TEST_CASE("whole line diverges when phi_eps(0) > 0") {
    auto fam = PhiEpsFamily::constructed(PhiSpec::tabulated({0.0, 1.0}, {1.0, 2.0}),
                                         PsiSpec::power(0.5), 1.0, 64);
    CHECK(is_infinite(f_eps_1d(heaviside(1.0), fam, 0.1)));
    // on a bounded interval the energy stays finite
    double v = f_eps_1d(heaviside(1.0), fam, 0.1, Domain1D::interval(0.0, 1.0));
    CHECK(!is_infinite(v));
}

TEST_CASE("nearest-neighbor interpolation mode") {
    Signal1D s(0.0, 1.0, {0.0, 10.0, 20.0}, Interp1D::Nearest);
    CHECK(s(0.4) == 0.0);
    CHECK(s(0.6) == 10.0);
    CHECK(s(1.4) == 10.0);
    CHECK(s(2.7) == 20.0);
    Signal1D lin(0.0, 1.0, {0.0, 10.0, 20.0});
    CHECK(lin(0.5) == doctest::Approx(5.0));
}

TEST_CASE("analytic signals reject maps that vary outside the window") {
    CHECK_THROWS_AS(AnalyticSignal1D([](double x) { return x; }, 0.0, 1.0),
                    std::invalid_argument);
}

} // TEST_SUITE
