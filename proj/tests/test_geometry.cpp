#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rhk/geometry.hpp"

#include <cmath>
#include <numbers>

using namespace rhk;
namespace pi = std::numbers;

static RadialGeometry flat_ball(int m, double R, double alpha) {
    RadialGeometry g;
    g.family = Family::RealSpaceForm;
    g.dim = m;
    g.kappa = 0.0;
    g.radius = R;
    g.alpha = RobinParameter::robin(alpha);
    return g;
}

TEST_CASE("substitution closed forms for space forms") {
    auto g = flat_ball(3, 2.0, 1.0);
    auto sub = substitution_for(g);
    CHECK(sub.s_of_r(2.0) == doctest::Approx(2.0).epsilon(1e-12));   // r^2/2
    CHECK(sub.s_of_r(1.0) == doctest::Approx(0.5).epsilon(1e-12));

    g.kappa = 1.0;
    g.radius = pi::pi / 2;
    sub = substitution_for(g);
    CHECK(sub.s_of_r(pi::pi / 2) == doctest::Approx(1.0).epsilon(1e-12));  // 1 - cos
}

TEST_CASE("substitution inverse and speed consistency") {
    for (auto fam : {Family::RealSpaceForm, Family::Kahler, Family::QuaternionKahler}) {
        for (double kappa : {-1.0, 0.0, 0.5}) {
            RadialGeometry g;
            g.family = fam;
            g.dim = 2;
            g.kappa = kappa;
            g.radius = 0.9;
            g.alpha = RobinParameter::robin(1.0);
            auto sub = substitution_for(g);
            for (int i = 1; i <= 16; ++i) {
                const double r = 0.9 * i / 16;
                CHECK(sub.r_of_s(sub.s_of_r(r)) == doctest::Approx(r).epsilon(1e-10));
                CHECK(sub.speed(r) == doctest::Approx(g.speed(r)).epsilon(1e-10));
                CHECK(sub.speed(r) > 0);
            }
            // strictly increasing
            double prev = 0;
            for (int i = 1; i <= 64; ++i) {
                const double s = sub.s_of_r(0.9 * i / 64);
                CHECK(s > prev);
                prev = s;
            }
        }
    }
}

TEST_CASE("kahler substitution degenerates to r^2/2 at kappa = 0") {
    RadialGeometry g;
    g.family = Family::Kahler;
    g.dim = 3;
    g.kappa = 0.0;
    g.radius = 1.0;
    g.alpha = RobinParameter::robin(1.0);
    auto sub = substitution_for(g);
    for (double r : {0.25, 0.5, 1.0})
        CHECK(sub.s_of_r(r) == doctest::Approx(0.5 * r * r).epsilon(1e-10));
}

TEST_CASE("kahler and quaternion drift degenerate to flat space forms at kappa = 0") {
    RadialGeometry ka;
    ka.family = Family::Kahler;
    ka.dim = 2;
    ka.kappa = 0.0;
    ka.radius = 1.0;
    ka.alpha = RobinParameter::robin(1.0);
    RadialGeometry qa = ka;
    qa.family = Family::QuaternionKahler;
    for (int i = 1; i <= 32; ++i) {
        const double r = i / 32.0;
        CHECK(ka.drift(r) == doctest::Approx((2 * ka.dim - 1) / r).epsilon(1e-12));
        CHECK(qa.drift(r) == doctest::Approx((4 * qa.dim - 1) / r).epsilon(1e-12));
    }
}

TEST_CASE("weights vanish at zero and are positive inside") {
    for (auto fam : {Family::RealSpaceForm, Family::Kahler, Family::QuaternionKahler}) {
        RadialGeometry g;
        g.family = fam;
        g.dim = 2;
        g.kappa = -0.5;
        g.radius = 1.2;
        g.alpha = RobinParameter::robin(1.0);
        CHECK(g.weight(0.0) == 0.0);
        for (int i = 1; i <= 16; ++i) CHECK(g.weight(1.2 * i / 16) > 0);
    }
}

TEST_CASE("geometry validation") {
    auto g = flat_ball(3, 1.0, 1.0);
    CHECK_NOTHROW(g.validate());
    g.radius = -1;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    g.radius = 1.0;
    g.kappa = 10.0;  // R >= pi/sqrt(kappa) ~ 0.993
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    RadialGeometry ka;
    ka.family = Family::Kahler;
    ka.dim = 2;
    ka.kappa = 4.0;
    ka.radius = 0.8;  // cap is pi/(2*2) ~ 0.785
    ka.alpha = RobinParameter::robin(1.0);
    CHECK_THROWS_AS(ka.validate(), std::invalid_argument);
}

TEST_CASE("hypothesis_check on constant-curvature warpings") {
    auto f1 = WarpingFunction::sn_form(1.0);    // curvature +1
    auto fm1 = WarpingFunction::sn_form(-1.0);  // curvature -1
    auto f0 = WarpingFunction::sn_form(0.0);    // flat

    auto rep = hypothesis_check(f1, 3, 0.0, CurvatureMode::RicciLower, 1.0);
    CHECK(rep.pass);
    CHECK(rep.margin == doctest::Approx(2.0).epsilon(1e-6));  // (m-1) * (1 - 0)

    rep = hypothesis_check(fm1, 3, 0.0, CurvatureMode::SectUpper, 1.0);
    CHECK(rep.pass);

    rep = hypothesis_check(f0, 3, 1.0, CurvatureMode::RicciLower, 1.0);
    CHECK_FALSE(rep.pass);

    // equality case passes within tolerance
    rep = hypothesis_check(f1, 3, 1.0, CurvatureMode::RicciLower, 1.0);
    CHECK(rep.pass);
    rep = hypothesis_check(f1, 3, 1.0, CurvatureMode::SectUpper, 1.0);
    CHECK(rep.pass);
}

TEST_CASE("warping validation") {
    auto f = WarpingFunction::sn_form(4.0);  // vanishes at pi/2
    CHECK_THROWS_AS(f.validate(2.0), std::invalid_argument);
    CHECK_NOTHROW(f.validate(1.0));
}
