#include "rhk/heat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rhk {

TimeGrid TimeGrid::of(std::vector<double> t) {
    if (t.empty()) throw std::invalid_argument("TimeGrid: need at least one time");
    if (!(t.front() > 0)) throw std::invalid_argument("TimeGrid: times must be positive");
    for (size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1]))
            throw std::invalid_argument("TimeGrid: times must be strictly increasing");
    return TimeGrid{std::move(t)};
}

double HeatKernelField::mass(int k) const {
    const auto& row = values.at(k);
    double acc = 0;
    for (size_t j = 0; j < row.size(); ++j) acc += cell_mass[j] * row[j];
    return omega * acc;
}

// ---- spectral synthesis ----------------------------------------------------

namespace {

// max_j sum_i |phi_i(0) phi_i(r_j)|, the prefactor of the tail bound
double tail_prefactor(const SpectralData& spec) {
    const int n = spec.grid.n;
    const int k = static_cast<int>(spec.lambdas.size());
    double worst = 0;
    for (int j = 0; j < n; ++j) {
        double acc = 0;
        for (int i = 0; i < k; ++i)
            acc += std::abs(spec.center_value(i) * spec.modes[i][j]);
        worst = std::max(worst, acc);
    }
    return worst;
}

double center_sum(const SpectralData& spec, double t) {
    double acc = 0;
    for (size_t i = 0; i < spec.lambdas.size(); ++i) {
        const double c = spec.center_value(static_cast<int>(i));
        acc += std::exp(-spec.lambdas[i] * t) * c * c;
    }
    return acc;
}

}  // namespace

double spectral_t_min(const SpectralData& spec) {
    const double pre = tail_prefactor(spec);
    const double lam_last = spec.lambdas.back();
    auto ok = [&](double t) {
        return pre * std::exp(-lam_last * t) < 1e-6 * center_sum(spec, t);
    };
    double hi = 1e-8;
    while (!ok(hi)) {
        hi *= 2;
        if (hi > 1e3)
            throw std::runtime_error("spectral_t_min: tail never controlled; too few modes");
    }
    double lo = hi / 2;
    if (ok(lo)) return hi / 2;  // already valid at the smallest probe
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? hi : lo) = mid;
    }
    return hi;
}

HeatKernelField kernel_spectral(const SpectralData& spec, const TimeGrid& tgrid) {
    const double tmin = spectral_t_min(spec);
    if (tgrid.times.front() < tmin) {
        const double t = tgrid.times.front();
        const double bound = tail_prefactor(spec) * std::exp(-spec.lambdas.back() * t);
        throw std::invalid_argument(
            "kernel_spectral: t=" + std::to_string(t) + " below the truncation threshold " +
            std::to_string(tmin) + " (tail bound " + std::to_string(bound) + ")");
    }
    HeatKernelField f;
    f.geom = spec.geom;
    f.rgrid = spec.grid;
    f.tgrid = tgrid;
    f.provenance = Provenance::Spectral;
    f.omega = spec.norm_constant;
    const DiscreteOperator op = assemble(spec.geom, spec.grid);
    f.cell_mass = op.mass;
    const int n = spec.grid.n;
    const int k = static_cast<int>(spec.lambdas.size());
    const double pre = tail_prefactor(spec);
    f.values.assign(tgrid.size(), std::vector<double>(n, 0.0));
    f.tail.resize(tgrid.size());
    for (int kt = 0; kt < tgrid.size(); ++kt) {
        const double t = tgrid.times[kt];
        auto& row = f.values[kt];
        for (int i = 0; i < k; ++i) {
            const double c = std::exp(-spec.lambdas[i] * t) * spec.center_value(i);
            if (c == 0.0) continue;
            for (int j = 0; j < n; ++j) row[j] += c * spec.modes[i][j];
        }
        f.tail[kt] = pre * std::exp(-spec.lambdas.back() * t);
    }
    return f;
}

// ---- Crank-Nicolson time stepper -------------------------------------------

HeatKernelField kernel_timestep(const RadialGeometry& geom, const Grid& grid,
                                const TimeGrid& tgrid, double mollifier_width) {
    const double h = grid.h();
    if (!(mollifier_width >= 3 * h))
        throw std::invalid_argument("kernel_timestep: mollifier width below 3 grid spacings");
    const DiscreteOperator op = assemble(geom, grid);
    const int nu = op.unknowns();
    const double sigma = mollifier_width;
    const double t0 = 0.5 * sigma * sigma;  // effective start time of the Gaussian
    if (!(tgrid.times.front() > t0))
        throw std::invalid_argument("kernel_timestep: first time not beyond the mollifier bias");

    HeatKernelField f;
    f.geom = geom;
    f.rgrid = grid;
    f.tgrid = tgrid;
    f.provenance = Provenance::TimeStepped;
    f.omega = geom.sphere_area();
    f.cell_mass = op.mass;
    f.mollifier_bias = t0;
    f.values.assign(tgrid.size(), std::vector<double>(grid.n, 0.0));

    // tridiagonal coefficients of A (stiffness with the Robin term)
    std::vector<double> adiag(nu, 0.0), aoff(nu - 1, 0.0);
    for (int j = 0; j < nu; ++j) {
        double a = 0;
        if (j > 0) a += op.flux[j - 1];
        if (j < nu - 1) a += op.flux[j];
        if (op.dirichlet && j == nu - 1) a += op.flux[j];
        if (!op.dirichlet && j == nu - 1) a += op.robin_term;
        adiag[j] = a;
    }
    for (int j = 0; j < nu - 1; ++j) aoff[j] = -op.flux[j];

    std::vector<double> u(nu);
    for (int j = 0; j < nu; ++j) {
        const double r = grid.node(j);
        u[j] = std::exp(-r * r / (2.0 * sigma * sigma));
    }
    {
        double m0 = 0;
        for (int j = 0; j < nu; ++j) m0 += op.mass[j] * u[j];
        m0 *= f.omega;
        for (auto& v : u) v /= m0;
    }

    std::vector<double> lo(nu), di(nu), up(nu), rhs(nu);
    double worst_identity = 0;
    double tcur = t0;
    for (int kt = 0; kt < tgrid.size(); ++kt) {
        const double ttarget = tgrid.times[kt];
        const double span = ttarget - tcur;
        const double dt_max = std::min(ttarget / 256.0, 0.002);
        const int nsteps = std::max(1, static_cast<int>(std::ceil(span / dt_max)));
        const double dt = span / nsteps;
        // theta = 1 is backward Euler, theta = 1/2 is Crank-Nicolson
        auto step = [&](double step_dt, double theta) {
            for (int j = 0; j < nu; ++j) {
                di[j] = op.mass[j] + theta * step_dt * adiag[j];
                double b = op.mass[j] * u[j] - (1 - theta) * step_dt * adiag[j] * u[j];
                if (j > 0) b -= (1 - theta) * step_dt * aoff[j - 1] * u[j - 1];
                if (j < nu - 1) b -= (1 - theta) * step_dt * aoff[j] * u[j + 1];
                rhs[j] = b;
                lo[j] = (j > 0) ? theta * step_dt * aoff[j - 1] : 0.0;
                up[j] = (j < nu - 1) ? theta * step_dt * aoff[j] : 0.0;
            }
            std::vector<double> unew = solve_tridiagonal(lo, di, up, rhs);
            // discrete decay law: d(mass)/dt = -alpha omega w(R) H(R,t)
            if (!op.dirichlet) {
                double dm = 0;
                for (int j = 0; j < nu; ++j) dm += op.mass[j] * (unew[j] - u[j]);
                dm *= f.omega;
                const double flux_out = -step_dt * op.robin_term * f.omega *
                                        (theta * unew[nu - 1] + (1 - theta) * u[nu - 1]);
                double m1 = 0;
                for (int j = 0; j < nu; ++j) m1 += op.mass[j] * unew[j];
                m1 *= f.omega;
                worst_identity =
                    std::max(worst_identity, std::abs(dm - flux_out) / std::max(m1, 1e-300));
            }
            u = std::move(unew);
        };
        if (kt == 0) {
            // Startup from the near-delta datum: ramp the step up from the
            // mollifier time scale (a fixed large step would dwarf the current
            // time and wreck accuracy) and use damped, L-stable variable-step
            // BDF2 -- Crank-Nicolson barely attenuates the stiff transients
            // excited by the concentrated initial datum.
            std::vector<double> uprev;
            double dt_prev = 0;
            double tl = t0;
            while (tl < ttarget - 1e-15 * ttarget) {
                const double dts = std::min({0.1 * tl, dt_max, ttarget - tl});
                if (uprev.empty()) {
                    uprev = u;
                    step(dts, 1.0);  // backward-Euler bootstrap
                } else {
                    // (a M + dt A) u_new = M ((1+rho) u - rho^2/(1+rho) u_prev)
                    const double rho = dts / dt_prev;
                    const double a = (1 + 2 * rho) / (1 + rho);
                    const double cprev = rho * rho / (1 + rho);
                    for (int j = 0; j < nu; ++j) {
                        di[j] = a * op.mass[j] + dts * adiag[j];
                        rhs[j] = op.mass[j] * ((1 + rho) * u[j] - cprev * uprev[j]);
                        lo[j] = (j > 0) ? dts * aoff[j - 1] : 0.0;
                        up[j] = (j < nu - 1) ? dts * aoff[j] : 0.0;
                    }
                    std::vector<double> unew = solve_tridiagonal(lo, di, up, rhs);
                    if (!op.dirichlet) {
                        double mnew = 0, mcur = 0, mold = 0, mtot = 0;
                        for (int j = 0; j < nu; ++j) {
                            mnew += op.mass[j] * unew[j];
                            mcur += op.mass[j] * u[j];
                            mold += op.mass[j] * uprev[j];
                        }
                        mtot = f.omega * mnew;
                        const double lhs =
                            f.omega * (a * mnew - (1 + rho) * mcur + cprev * mold);
                        const double flux_out =
                            -dts * op.robin_term * f.omega * unew[nu - 1];
                        worst_identity = std::max(
                            worst_identity, std::abs(lhs - flux_out) / std::max(mtot, 1e-300));
                    }
                    uprev = std::move(u);
                    u = std::move(unew);
                }
                dt_prev = dts;
                tl += dts;
            }
        } else {
            for (int s = 0; s < nsteps; ++s) step(dt, 0.5);
        }
        std::copy(u.begin(), u.end(), f.values[kt].begin());  // Dirichlet pads the last node
        tcur = ttarget;
    }
    f.mass_identity_residual = worst_identity;
    return f;
}

// ---- substituted diagnostics -----------------------------------------------

namespace {

CheckResult sign_below(std::span<const double> values, std::span<const double> xs, int first,
                       int last, double floor, const std::string& what) {
    // requires values[j] < 0 for j in [first, last]; margin = -max value
    CheckResult res;
    double worst = -std::numeric_limits<double>::infinity();
    for (int j = first; j <= last; ++j) {
        if (values[j] > worst) {
            worst = values[j];
            res.worst_x = xs[j];
        }
    }
    res.margin = -worst;
    res.verdict = res.margin > floor    ? Verdict::Pass
                  : res.margin > -floor ? Verdict::Inconclusive
                                        : Verdict::Fail;
    res.note = what;
    return res;
}

}  // namespace

SubstitutedKernel substituted_diagnostics(const HeatKernelField& field, const SpectralData& spec,
                                          const Substitution& sub) {
    const RadialGeometry& geom = field.geom;
    if (geom.family != Family::RealSpaceForm)
        throw std::invalid_argument("substituted_diagnostics: space-form geometry required");
    SubstitutedKernel out;
    out.gate_met = true;
    if (geom.kappa > 0) {
        const double sk = std::sqrt(geom.kappa);
        out.gate_met = !geom.alpha.dirichlet &&
                       geom.radius <= std::atan(geom.alpha.value / sk) / sk + 1e-12;
    }
    const int n = field.rgrid.n;
    const int m = geom.real_dimension();
    const double smax = sub.s_max();
    const double hs = smax / (n - 1);
    const auto xs = field.rgrid.nodes();
    out.sgrid.resize(n);
    for (int j = 0; j < n; ++j) out.sgrid[j] = hs * j;

    const int K = field.tgrid.size();
    out.phi.assign(K, std::vector<double>(n));
    out.dphi.resize(K);
    out.d2phi.resize(K);
    out.slope.resize(K);
    out.convexity.resize(K);
    out.boundary_identity.resize(K);
    out.d2phi0_formula.resize(K);
    out.d2phi0_fd.resize(K);

    const double snR = sn(geom.kappa, geom.radius);
    const double snpR = sn_prime(geom.kappa, geom.radius);
    const double alpha = geom.alpha.dirichlet ? 0.0 : geom.alpha.value;

    for (int kt = 0; kt < K; ++kt) {
        CubicSpline hspline(xs, field.values[kt]);
        auto& p = out.phi[kt];
        for (int j = 0; j < n; ++j) p[j] = hspline(sub.r_of_s(out.sgrid[j]));
        out.dphi[kt] = derivative4(p, hs);
        out.d2phi[kt] = derivative4(out.dphi[kt], hs);

        double d1max = 0, d2max = 0;
        for (int j = 0; j < n; ++j) {
            d1max = std::max(d1max, std::abs(out.dphi[kt][j]));
            d2max = std::max(d2max, std::abs(out.d2phi[kt][j]));
        }
        out.slope[kt] = sign_below(out.dphi[kt], out.sgrid, 1, n - 1, 1e-9 * d1max,
                                   "phi'(s,t) < 0 for 0 < s <= s(R)");
        {
            std::vector<double> neg(n);
            for (int j = 0; j < n; ++j) neg[j] = -out.d2phi[kt][j];
            out.convexity[kt] = sign_below(neg, out.sgrid, 0, n - 2, 1e-6 * d2max,
                                           "phi''(s,t) > 0 for 0 <= s < s(R)");
        }
        {
            // third-order boundary identity at s = s(R)
            CheckResult res;
            res.note = "sn^3 phi''' + ((m+2) sn sn' + a sn^2) phi'' + m (a sn' - k sn) phi' = 0";
            const double p1 = deriv_at_end(p, hs);
            const double p2 = deriv2_at_end(p, hs);
            const double p3 = deriv3_at_end(p, hs);
            const double t1 = snR * snR * snR * p3;
            const double t2 = ((m + 2) * snR * snpR + alpha * snR * snR) * p2;
            const double t3 = m * (alpha * snpR - geom.kappa * snR) * p1;
            const double resid = t1 + t2 + t3;
            const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3), 1e-300});
            res.margin = -std::abs(resid) / scale;
            res.worst_x = smax;
            res.verdict = std::abs(resid) <= 0.02 * scale ? Verdict::Pass : Verdict::Fail;
            out.boundary_identity[kt] = res;
        }
        {
            const double t = field.tgrid.times[kt];
            double acc = 0;
            for (size_t i = 0; i < spec.lambdas.size(); ++i) {
                const double lam = spec.lambdas[i];
                const double c = spec.center_value(static_cast<int>(i));
                acc += std::exp(-lam * t) * c * c * lam * (lam - geom.kappa * m) /
                       (m * (m + 2.0));
            }
            out.d2phi0_formula[kt] = acc;
            out.d2phi0_fd[kt] = deriv2_at_start(p, hs);
        }
    }
    return out;
}

}  // namespace rhk
