#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>

#include "freedisc/limit_energy.hpp"
#include "freedisc/numeric.hpp"

using namespace freedisc;

TEST_SUITE("limit_energy") {

TEST_CASE("one-dimensional limit energies") {
    PhiSpec sq = PhiSpec::power(2.0);
    PsiSpec halfPi = PsiSpec::constant(std::numbers::pi / 2.0);
    PsiSpec root = PsiSpec::power(0.5);

    Sbv1D jumpOnly({-1.0, 1.0}, {0.0}, {{0.0, 0.0, 1.0}});
    CHECK(limit_energy_1d(jumpOnly, sq, halfPi) == doctest::Approx(std::numbers::pi / 2.0));

    Sbv1D ramp({0.0, 2.5}, {3.0}, {});
    CHECK(limit_energy_1d(ramp, sq, root) == doctest::Approx(2.5 * 9.0));

    // slope 2 on [0,1], jump of 4 at 0.5: 1*4 + sqrt(4) = 6
    Sbv1D mixed({0.0, 1.0}, {2.0}, {{0.5, 1.0, 5.0}});
    CHECK(limit_energy_1d(mixed, sq, root) == doctest::Approx(6.0));
}

TEST_CASE("total variation and its equivalence to identity integrands") {
    Sbv1D ramp({0.0, 1.0}, {1.0}, {});
    CHECK(total_variation_1d(ramp) == doctest::Approx(1.0));
    Sbv1D rampJump({0.0, 1.0}, {1.0}, {{0.5, 0.5, 1.5}});
    CHECK(total_variation_1d(rampJump) == doctest::Approx(2.0));
    CHECK(total_variation_1d(rampJump) ==
          limit_energy_1d(rampJump, PhiSpec::power(1.0), PsiSpec::linear(1.0)));
}

TEST_CASE("additivity over splits at non-jump knots") {
    PhiSpec sq = PhiSpec::power(2.0);
    PsiSpec root = PsiSpec::power(0.5);
    Sbv1D onePiece({0.0, 2.0}, {1.5}, {{1.3, 1.95, 3.0}});
    Sbv1D twoPiece({0.0, 1.0, 2.0}, {1.5, 1.5}, {{1.3, 1.95, 3.0}});
    CHECK(limit_energy_1d(onePiece, sq, root) ==
          doctest::Approx(limit_energy_1d(twoPiece, sq, root)).epsilon(1e-15));
}

TEST_CASE("monotonicity in psi") {
    Sbv1D u({0.0, 1.0}, {1.0}, {{0.5, 0.5, 2.0}});
    PhiSpec sq = PhiSpec::power(2.0);
    double small = limit_energy_1d(u, sq, PsiSpec::power(0.5, 1.0));
    double large = limit_energy_1d(u, sq, PsiSpec::power(0.5, 2.0));
    CHECK(large >= small);
}

TEST_CASE("reconstruction and validation of the explicit representation") {
    Sbv1D u({0.0, 1.0}, {2.0}, {{0.5, 1.0, 3.0}});
    CHECK(u(0.0) == doctest::Approx(0.0));
    CHECK(u(0.25) == doctest::Approx(0.5));
    CHECK(u(0.5) == doctest::Approx(3.0));  // right limit at the jump
    CHECK(u(1.0) == doctest::Approx(4.0));
    CHECK(u(5.0) == doctest::Approx(4.0));  // constant extension
    CHECK(u(-1.0) == doctest::Approx(0.0));

    CHECK_THROWS_AS(Sbv1D({0.0, 1.0}, {0.0}, {{0.0, 0.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(Sbv1D({0.0, 1.0}, {2.0}, {{0.5, 7.0, 8.0}}), std::invalid_argument);
    CHECK_THROWS_AS(Sbv1D({0.0, 1.0}, {0.0}, {{0.5, 0.0, 1.0}, {0.5, 1.0, 2.0}}),
                    std::invalid_argument);
}

TEST_CASE("text round trip preserves the energies") {
    namespace fs = std::filesystem;
    Sbv1D u({0.0, 0.5, 2.0}, {1.0, -0.5}, {{1.0, 0.25, 2.0}}, 0.0);
    fs::path p = fs::temp_directory_path() / "freedisc_sbv_roundtrip.txt";
    u.save_text(p.string());
    Sbv1D v = Sbv1D::load_text(p.string());
    PhiSpec sq = PhiSpec::power(2.0);
    PsiSpec root = PsiSpec::power(0.5);
    CHECK(limit_energy_1d(v, sq, root) ==
          doctest::Approx(limit_energy_1d(u, sq, root)).epsilon(1e-15));
    CHECK(total_variation_1d(v) == doctest::Approx(total_variation_1d(u)).epsilon(1e-15));
    fs::remove(p);
}

TEST_CASE("polyline csv round trip") {
    namespace fs = std::filesystem;
    auto pts = circle_polyline(0.5, -0.25, 2.0, 16);
    fs::path p = fs::temp_directory_path() / "freedisc_polyline.csv";
    save_polyline_csv(pts, p.string());
    auto back = load_polyline_csv(p.string());
    REQUIRE(back.size() == pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
        CHECK(back[i][0] == doctest::Approx(pts[i][0]).epsilon(1e-16));
        CHECK(back[i][1] == doctest::Approx(pts[i][1]).epsilon(1e-16));
    }
    fs::remove(p);
}

TEST_CASE("two-dimensional limit energy") {
    PhiSpec sq = PhiSpec::power(2.0);
    PsiSpec halfPi = PsiSpec::constant(std::numbers::pi / 2.0);

    SUBCASE("disk indicator jump term") {
        PiecewiseField2D disk;
        disk.value = [](double x, double y) { return std::hypot(x, y) <= 1.0 ? 1.0 : 0.0; };
        disk.gradient = [](double, double) { return std::array<double, 2>{0.0, 0.0}; };
        disk.polyline = circle_polyline(0.0, 0.0, 1.0, 64);
        disk.amplitude = [](double, double) { return 1.0; };
        disk.xlo = disk.ylo = -1.5;
        disk.xhi = disk.yhi = 1.5;
        double v = limit_energy_2d(disk, sq, halfPi);
        double perim64 = 2.0 * 64.0 * std::sin(std::numbers::pi / 64.0);
        CHECK(v == doctest::Approx(std::numbers::pi / 2.0 * perim64).epsilon(1e-12));
        CHECK(v == doctest::Approx(std::numbers::pi * std::numbers::pi).epsilon(1e-3));
    }
    SUBCASE("zero field and affine field") {
        PiecewiseField2D zero;
        zero.value = [](double, double) { return 0.0; };
        zero.gradient = [](double, double) { return std::array<double, 2>{0.0, 0.0}; };
        CHECK(limit_energy_2d(zero, sq, halfPi) == 0.0);

        double a = 1.7;
        PiecewiseField2D affine;
        affine.value = [a](double x, double) { return a * x; };
        affine.gradient = [a](double, double) { return std::array<double, 2>{a, 0.0}; };
        CHECK(limit_energy_2d(affine, sq, halfPi) == doctest::Approx(a * a).epsilon(1e-12));
    }
    SUBCASE("isotropy under a quarter turn") {
        double a = 2.0;
        PiecewiseField2D gx;
        gx.value = [a](double x, double) { return a * x; };
        gx.gradient = [a](double, double) { return std::array<double, 2>{a, 0.0}; };
        PiecewiseField2D gy;
        gy.value = [a](double, double y) { return a * y; };
        gy.gradient = [a](double, double) { return std::array<double, 2>{0.0, a}; };
        CHECK(limit_energy_2d(gx, sq, halfPi) ==
              doctest::Approx(limit_energy_2d(gy, sq, halfPi)).epsilon(1e-12));
    }
}

TEST_CASE("target limits of the worked families") {
    Kernel k1 = Kernel::indicator(1.0, 1, 0.0);

    SUBCASE("jump-only family on a pure jump") {
        // c_{0,1} * j_{1.5} = 2 * (1/1.5) = 4/3
        Sbv1D jump({-1.0, 1.0}, {0.0}, {{0.0, 0.0, 1.0}});
        double v = target_limit(PhiEpsFamily::root(2.0), k1, 1, jump);
        CHECK(v == doctest::Approx(4.0 / 3.0).epsilon(1e-10));
        // a nonzero slope sends it to infinity
        Sbv1D ramp({0.0, 1.0}, {1.0}, {});
        CHECK(is_infinite(target_limit(PhiEpsFamily::root(2.0), k1, 1, ramp)));
    }
    SUBCASE("power family diverges on jumps") {
        Sbv1D jump({-1.0, 1.0}, {0.0}, {{0.0, 0.0, 1.0}});
        CHECK(is_infinite(target_limit(PhiEpsFamily::power(2.0), k1, 1, jump)));
        Sbv1D ramp({0.0, 1.0}, {3.0}, {});
        // c_{2,1} j_3 * integral |grad|^2 = 2 * (1/3) * 9
        CHECK(target_limit(PhiEpsFamily::power(2.0), k1, 1, ramp) ==
              doctest::Approx(6.0).epsilon(1e-10));
    }
    SUBCASE("arctan family combines both constants") {
        Sbv1D u({0.0, 1.0}, {2.0}, {{0.5, 1.0, 3.0}});
        // lambda = c_{2,1} j_2 = 1, mu = (pi/2) c_{0,1} j_2 = pi/2
        double v = target_limit(PhiEpsFamily::arctan_ms(), k1, 1, u);
        CHECK(v == doctest::Approx(4.0 + std::numbers::pi / 2.0).epsilon(1e-10));
    }
    SUBCASE("total-variation family") {
        Sbv1D u({0.0, 1.0}, {1.0}, {{0.5, 0.5, 1.5}});
        // c_{1,1} j_2 = 1, times |Du| = 2
        CHECK(target_limit(PhiEpsFamily::linear(), k1, 1, u) ==
              doctest::Approx(2.0).epsilon(1e-10));
    }
    SUBCASE("square-root jump family") {
        Sbv1D u({0.0, 1.0}, {0.0}, {{0.5, 0.0, 4.0}});
        // lambda = c_{2,1} j_2 = 1 (times zero bulk), mu = c_{0,1} j_2 = 1, sqrt(4) = 2
        CHECK(target_limit(PhiEpsFamily::rational32(), k1, 1, u) ==
              doctest::Approx(2.0).epsilon(1e-10));
    }
    SUBCASE("mismatches throw") {
        Sbv1D u({0.0, 1.0}, {0.0}, {});
        CHECK_THROWS_AS(target_limit(PhiEpsFamily::arctan_ms(), Kernel::indicator(1.0, 2), 2, u),
                        std::invalid_argument);
        CHECK_THROWS_AS(
            target_limit(PhiEpsFamily::constructed(PhiSpec::power(2.0), PsiSpec::power(0.5), 1.0),
                         k1, 1, u),
            std::invalid_argument);
    }
}

} // TEST_SUITE
