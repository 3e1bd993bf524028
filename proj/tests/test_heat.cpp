#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rhk/heat.hpp"

#include <cmath>
#include <numbers>

using namespace rhk;
namespace pi = std::numbers;

namespace {

RadialGeometry ball(int m, double kappa, double R, RobinParameter a) {
    RadialGeometry g;
    g.family = Family::RealSpaceForm;
    g.dim = m;
    g.kappa = kappa;
    g.radius = R;
    g.alpha = a;
    return g;
}

SpectralData solve(const RadialGeometry& g, int n, int k) {
    return eigensolve(assemble(g, make_grid(n, g.radius)), k);
}

}  // namespace

TEST_CASE("time grid validation") {
    CHECK_THROWS_AS(TimeGrid::of({}), std::invalid_argument);
    CHECK_THROWS_AS(TimeGrid::of({-0.1, 0.2}), std::invalid_argument);
    CHECK_THROWS_AS(TimeGrid::of({0.2, 0.1}), std::invalid_argument);
    CHECK_NOTHROW(TimeGrid::of({0.1, 0.2, 1.0}));
}

TEST_CASE("spectral kernel: large-time first-mode dominance") {
    auto g = ball(3, 0.0, 1.0, RobinParameter::robin(1.0));
    auto spec = solve(g, 513, 64);
    const double tstar = 20.0 / (spec.lambdas[1] - spec.lambdas[0]);
    auto f = kernel_spectral(spec, TimeGrid::of({tstar}));
    const double scale = std::exp(spec.lambdas[0] * tstar);
    for (int j = 0; j < f.rgrid.n; ++j) {
        const double expect = spec.center_value(0) * spec.modes[0][j];
        CHECK(scale * f.values[0][j] == doctest::Approx(expect).epsilon(1e-6));
    }
}

TEST_CASE("spectral kernel: Neumann mass conservation") {
    auto g = ball(3, 0.0, 1.0, RobinParameter::neumann());
    auto spec = solve(g, 513, 64);
    auto f = kernel_spectral(spec, TimeGrid::of({0.01, 0.5, 2.0}));
    for (int k = 0; k < 3; ++k) CHECK(f.mass(k) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("spectral kernel: small-time Gaussian amplitude at the center") {
    auto g = ball(3, 0.0, 1.0, RobinParameter::robin(1.0));
    auto spec = solve(g, 1025, 256);
    CHECK(spectral_t_min(spec) < 0.01);
    auto f = kernel_spectral(spec, TimeGrid::of({0.01}));
    const double gauss = std::pow(4.0 * pi::pi * 0.01, -1.5);
    CHECK(f.values[0][0] == doctest::Approx(gauss).epsilon(0.05));
}

TEST_CASE("spectral kernel rejects times below the truncation threshold") {
    auto g = ball(3, 0.0, 1.0, RobinParameter::robin(1.0));
    auto spec = solve(g, 257, 32);
    CHECK_THROWS_AS(kernel_spectral(spec, TimeGrid::of({1e-9})), std::invalid_argument);
}

TEST_CASE("time stepper cross-validates the spectral kernel") {
    auto g = ball(3, 0.0, 1.0, RobinParameter::robin(1.0));
    const int n = 1025;
    auto spec = solve(g, n, 256);
    auto tg = TimeGrid::of({0.05, 0.1, 0.3, 1.0});
    auto fs = kernel_spectral(spec, tg);
    auto ft = kernel_timestep(g, make_grid(n, 1.0), tg, 4.0 / (n - 1));
    for (int k = 0; k < tg.size(); ++k) {
        double worst = 0;
        for (int j = 0; j < n; ++j) {
            const double denom = std::max(std::abs(fs.values[k][j]), 1e-12);
            worst = std::max(worst, std::abs(fs.values[k][j] - ft.values[k][j]) / denom);
        }
        CHECK(worst < 1e-3);
    }
    CHECK(ft.mass_identity_residual < 1e-6);
}

TEST_CASE("time stepper: Neumann mass exactly conserved, Dirichlet mass decays") {
    const int n = 513;
    auto tg = TimeGrid::of({0.05, 0.2, 1.0});
    auto fn = kernel_timestep(ball(3, 0.0, 1.0, RobinParameter::neumann()),
                              make_grid(n, 1.0), tg, 4.0 / (n - 1));
    for (int k = 0; k < 3; ++k) CHECK(fn.mass(k) == doctest::Approx(1.0).epsilon(1e-9));
    auto fd = kernel_timestep(ball(3, 0.0, 1.0, RobinParameter::dirichlet_limit()),
                              make_grid(n, 1.0), tg, 4.0 / (n - 1));
    CHECK(fd.mass(0) < 1.0);
    CHECK(fd.mass(1) < fd.mass(0));
    CHECK(fd.mass(2) < fd.mass(1));
}

TEST_CASE("time stepper validation") {
    auto g = ball(3, 0.0, 1.0, RobinParameter::robin(1.0));
    auto grid = make_grid(257, 1.0);
    CHECK_THROWS_AS(kernel_timestep(g, grid, TimeGrid::of({0.1}), 1.0 / 256),
                    std::invalid_argument);
}

TEST_CASE("positivity and radial monotonicity for positive alpha") {
    for (double kappa : {-1.0, 0.0, 1.0}) {
        auto g = ball(3, kappa, 1.0, RobinParameter::robin(1.0));
        auto spec = solve(g, 513, 128);
        auto tg = TimeGrid::of({0.05, 0.5});
        auto f = kernel_spectral(spec, tg);
        const double h = f.rgrid.h();
        for (int k = 0; k < tg.size(); ++k) {
            double minval = 1e300;
            for (double v : f.values[k]) minval = std::min(minval, v);
            CHECK(minval > 0);
            auto dH = derivative4(f.values[k], h);
            double dmax = 0;
            for (double v : dH) dmax = std::max(dmax, std::abs(v));
            for (int j = 1; j < f.rgrid.n; ++j) CHECK(dH[j] < 1e-9 * dmax);
        }
    }
}

TEST_CASE("alpha monotonicity and Dirichlet/Neumann bracketing") {
    const int n = 513;
    auto tg = TimeGrid::of({0.05, 0.2, 1.0});
    auto mk = [&](RobinParameter a) {
        return kernel_spectral(solve(ball(3, 0.0, 1.0, a), n, 128), tg);
    };
    auto f_n = mk(RobinParameter::neumann());
    auto f_05 = mk(RobinParameter::robin(0.5));
    auto f_1 = mk(RobinParameter::robin(1.0));
    auto f_2 = mk(RobinParameter::robin(2.0));
    auto f_d = mk(RobinParameter::dirichlet_limit());
    for (int k = 0; k < tg.size(); ++k) {
        for (int j = 0; j < n; ++j) {
            CHECK(f_d.values[k][j] < f_2.values[k][j] + 1e-12);
            CHECK(f_2.values[k][j] < f_1.values[k][j]);
            CHECK(f_1.values[k][j] < f_05.values[k][j]);
            CHECK(f_05.values[k][j] < f_n.values[k][j]);
        }
    }
}

TEST_CASE("semigroup property through spectral propagation") {
    auto g = ball(3, 0.0, 1.0, RobinParameter::robin(1.0));
    const int n = 513;
    auto spec = solve(g, n, 128);
    const double t1 = 0.1, t2 = 0.25;
    auto f1 = kernel_spectral(spec, TimeGrid::of({t1}));
    auto f12 = kernel_spectral(spec, TimeGrid::of({t1 + t2}));
    const auto op = assemble(g, make_grid(n, 1.0));
    // project the t1 slice on the modes and push it forward by t2
    std::vector<double> prop(n, 0.0);
    for (size_t i = 0; i < spec.lambdas.size(); ++i) {
        double c = 0;
        for (int j = 0; j < n; ++j) c += op.mass[j] * f1.values[0][j] * spec.modes[i][j];
        c *= spec.norm_constant * std::exp(-spec.lambdas[i] * t2);
        for (int j = 0; j < n; ++j) prop[j] += c * spec.modes[i][j];
    }
    for (int j = 0; j < n; ++j)
        CHECK(prop[j] == doctest::Approx(f12.values[0][j]).epsilon(1e-6));
}

TEST_CASE("substituted diagnostics: flat ball sign suite") {
    auto g = ball(3, 0.0, 1.0, RobinParameter::robin(1.0));
    const int n = 1025;
    auto spec = solve(g, n, 256);
    auto f = kernel_spectral(spec, TimeGrid::of({0.05, 0.2, 1.0}));
    auto d = substituted_diagnostics(f, spec, substitution_for(g));
    CHECK(d.gate_met);
    for (int k = 0; k < 3; ++k) {
        CHECK(d.slope[k].verdict == Verdict::Pass);
        CHECK(d.convexity[k].verdict == Verdict::Pass);
        CHECK(d.boundary_identity[k].verdict == Verdict::Pass);
        CHECK(d.d2phi0_fd[k] ==
              doctest::Approx(d.d2phi0_formula[k]).epsilon(0.01));
    }
    // phi(s(r), t) agrees with H(r, t)
    CubicSpline phis(d.sgrid, d.phi[1]);
    auto sub = substitution_for(g);
    for (int j = 0; j < n; j += 97) {
        const double r = f.rgrid.node(j);
        CHECK(phis(sub.s_of_r(r)) == doctest::Approx(f.values[1][j]).epsilon(1e-6));
    }
}

TEST_CASE("substituted diagnostics: gate flag for kappa > 0") {
    auto g = ball(2, 1.0, 1.0, RobinParameter::robin(1.0));  // arctan(1) < 1
    auto spec = solve(g, 1025, 200);
    auto f = kernel_spectral(spec, TimeGrid::of({0.2}));
    auto d = substituted_diagnostics(f, spec, substitution_for(g));
    CHECK_FALSE(d.gate_met);

    auto g2 = ball(2, 1.0, std::atan(2.0), RobinParameter::robin(2.0));
    auto spec2 = solve(g2, 1025, 200);
    auto f2 = kernel_spectral(spec2, TimeGrid::of({0.2}));
    auto d2 = substituted_diagnostics(f2, spec2, substitution_for(g2));
    CHECK(d2.gate_met);
    CHECK(d2.slope[0].verdict == Verdict::Pass);
    CHECK(d2.convexity[0].verdict == Verdict::Pass);
}
