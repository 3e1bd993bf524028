#include "rhk/compare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rhk {

std::string direction_name(Direction d) {
    return d == Direction::LhsGeq ? "lhs-geq" : "lhs-leq";
}

std::string hypothesis_name(Hypothesis h) {
    switch (h) {
        case Hypothesis::RicciLower: return "ricci-lower";
        case Hypothesis::SectUpper: return "sect-upper";
        case Hypothesis::KahlerBounds: return "kahler-bounds";
        case Hypothesis::QuaternionBounds: return "quaternion-bounds";
    }
    return "?";
}

namespace {

struct Gate {
    bool pass = false;
    double margin = 0;
    std::string note;
};

void validate_scenario(const ComparisonScenario& sc) {
    sc.lhs.validate();
    sc.rhs.validate();
    if (std::abs(sc.lhs.radius - sc.rhs.radius) > 1e-12 * std::max(1.0, sc.rhs.radius))
        throw std::invalid_argument("comparison: lhs and rhs radii must match");
    if (sc.lhs.alpha.dirichlet != sc.rhs.alpha.dirichlet ||
        sc.lhs.alpha.value != sc.rhs.alpha.value)
        throw std::invalid_argument("comparison: lhs and rhs Robin parameters must match");
    if (sc.lhs.alpha.dirichlet || !(sc.lhs.alpha.value > 0))
        throw std::invalid_argument("comparison: requires finite alpha > 0");
}

WarpingFunction lhs_warping(const RadialGeometry& g) {
    if (g.family == Family::RealSpaceForm) return WarpingFunction::sn_form(g.kappa);
    if (g.family == Family::CustomWarped && g.warping) return *g.warping;
    throw std::invalid_argument("comparison: curvature hypothesis needs a warped/space-form lhs");
}

Gate check_hypothesis(const ComparisonScenario& sc) {
    Gate gate;
    switch (sc.hypothesis) {
        case Hypothesis::RicciLower:
        case Hypothesis::SectUpper: {
            if (sc.rhs.family != Family::RealSpaceForm)
                throw std::invalid_argument("comparison: curvature hypothesis needs a space-form rhs");
            const auto mode = sc.hypothesis == Hypothesis::RicciLower ? CurvatureMode::RicciLower
                                                                      : CurvatureMode::SectUpper;
            auto rep =
                hypothesis_check(lhs_warping(sc.lhs), sc.lhs.real_dimension(), sc.rhs.kappa, mode,
                                 sc.lhs.radius);
            gate.pass = rep.pass;
            gate.margin = rep.margin;
            gate.note = rep.note;
            return gate;
        }
        case Hypothesis::KahlerBounds:
        case Hypothesis::QuaternionBounds: {
            const auto want = sc.hypothesis == Hypothesis::KahlerBounds
                                  ? Family::Kahler
                                  : Family::QuaternionKahler;
            if (sc.rhs.family != want)
                throw std::invalid_argument("comparison: model rhs family does not match hypothesis");
            if (sc.lhs.real_dimension() != sc.rhs.real_dimension())
                throw std::invalid_argument("comparison: drift inequality needs equal dimensions");
            // radial content of the curvature bound: the drift inequality
            // against the model, in the direction matching the comparison
            double margin = std::numeric_limits<double>::infinity();
            double worst_r = 0;
            const int probes = 512;
            for (int i = 1; i <= probes; ++i) {
                const double r = sc.lhs.radius * i / probes;
                const double slack = sc.direction == Direction::LhsGeq
                                         ? sc.rhs.drift(r) - sc.lhs.drift(r)
                                         : sc.lhs.drift(r) - sc.rhs.drift(r);
                if (slack < margin) {
                    margin = slack;
                    worst_r = r;
                }
            }
            gate.margin = margin;
            gate.pass = margin >= -1e-8;
            gate.note = "drift inequality vs model, worst at r=" + std::to_string(worst_r);
            return gate;
        }
    }
    return gate;
}

SpectralData solve_modes(const RadialGeometry& g, int n) {
    const auto op = assemble(g, make_grid(n, g.radius));
    return eigensolve(op, std::min(300, n / 4));
}

// max |H_n - H_2n| over the shared nodes and all times
double refinement_gap(const HeatKernelField& coarse, const HeatKernelField& fine) {
    double worst = 0;
    for (size_t k = 0; k < coarse.values.size(); ++k)
        for (int j = 0; j < coarse.rgrid.n; ++j)
            worst = std::max(worst, std::abs(coarse.values[k][j] - fine.values[k][2 * j]));
    return worst;
}

}  // namespace

// ---- sub/supersolution residuals -------------------------------------------

ResidualReport sub_supersolution_residual(const HeatKernelField& field,
                                          const RadialGeometry& geom, ResidualMode mode,
                                          double tol) {
    const int K = field.tgrid.size();
    if (K < 2)
        throw std::invalid_argument("sub_supersolution_residual: need at least two time slices");
    const auto op = assemble(geom, field.rgrid);
    const int nu = op.unknowns();
    const auto& ts = field.tgrid.times;

    ResidualReport rep;
    rep.first_slice_one_sided = true;
    const double sgn = mode == ResidualMode::Super ? 1.0 : -1.0;
    // signed so that "satisfied" means slack >= 0 in both modes
    double worst = std::numeric_limits<double>::infinity();
    double worst_b = std::numeric_limits<double>::infinity();

    std::vector<double> au(nu), dFdt(field.rgrid.n);
    for (int k = 0; k < K; ++k) {
        // time derivative: one-sided at the ends, nonuniform central inside
        for (int j = 0; j < field.rgrid.n; ++j) {
            double d;
            if (k == 0 || k == K - 1) {
                const int s = (k == 0) ? 1 : -1;
                const double f0 = field.values[k][j], f1 = field.values[k + s][j];
                if (K == 2) {
                    d = s * (f1 - f0) / (ts[k + s] - ts[k]);
                } else {
                    const double f2 = field.values[k + 2 * s][j];
                    const double h1 = s * (ts[k + s] - ts[k]);
                    const double h2 = s * (ts[k + 2 * s] - ts[k + s]);
                    d = s * (-(2 * h1 + h2) / (h1 * (h1 + h2)) * f0 +
                             (h1 + h2) / (h1 * h2) * f1 - h1 / (h2 * (h1 + h2)) * f2);
                }
            } else {
                const double h1 = ts[k] - ts[k - 1], h2 = ts[k + 1] - ts[k];
                d = (h1 * h1 * field.values[k + 1][j] - h2 * h2 * field.values[k - 1][j] +
                     (h2 * h2 - h1 * h1) * field.values[k][j]) /
                    (h1 * h2 * (h1 + h2));
            }
            dFdt[j] = d;
        }
        // the first slice only sees a one-sided stencil: flagged, not judged
        if (k == 0 && K > 2) continue;
        std::span<const double> slice(field.values[k].data(), nu);
        op.interior_apply(slice, au);
        for (int j = 0; j <= nu - 2; ++j) {
            const double resid = dFdt[j] + au[j] / op.mass[j];
            const double slack = sgn * resid;
            if (slack < worst) {
                worst = slack;
                rep.worst_r = field.rgrid.node(j);
                rep.worst_t = ts[k];
            }
        }
        const double fr = deriv_at_end(field.values[k], field.rgrid.h());
        const double alpha = geom.alpha.dirichlet ? 0.0 : geom.alpha.value;
        const double bresid = fr + alpha * field.values[k][field.rgrid.n - 1];
        worst_b = std::min(worst_b, sgn * bresid);
    }
    rep.worst_interior = worst;
    rep.worst_boundary = worst_b;
    rep.verdict = (worst >= -tol && worst_b >= -tol) ? Verdict::Pass : Verdict::Fail;
    return rep;
}

// ---- kernel comparison -----------------------------------------------------

ComparisonReport kernel_compare(const ComparisonScenario& sc, const TimeGrid& tgrid, int n) {
    validate_scenario(sc);
    ComparisonReport rep;
    rep.id = sc.id;
    rep.grid_n = n;
    const Gate gate = check_hypothesis(sc);
    rep.hypothesis_margin = gate.margin;
    if (!gate.pass) {
        rep.verdict = Verdict::NotApplicable;
        rep.note = "hypothesis fails: " + gate.note;
        return rep;
    }
    const auto spec_l = solve_modes(sc.lhs, n);
    const auto spec_r = solve_modes(sc.rhs, n);
    const auto spec_l2 = solve_modes(sc.lhs, 2 * n - 1);
    const auto spec_r2 = solve_modes(sc.rhs, 2 * n - 1);
    const auto f_l = kernel_spectral(spec_l, tgrid);
    const auto f_r = kernel_spectral(spec_r, tgrid);
    const auto f_l2 = kernel_spectral(spec_l2, tgrid);
    const auto f_r2 = kernel_spectral(spec_r2, tgrid);

    const double est = refinement_gap(f_l, f_l2) + refinement_gap(f_r, f_r2);
    const double tail = f_l.tail[0] + f_r.tail[0];
    rep.tolerance = std::max(1e-6, 10.0 * est + tail);

    double worst = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < tgrid.size(); ++k) {
        for (int j = 0; j < n; ++j) {
            const double viol = sc.direction == Direction::LhsGeq
                                    ? f_r.values[k][j] - f_l.values[k][j]
                                    : f_l.values[k][j] - f_r.values[k][j];
            worst = std::max(worst, viol);
        }
    }
    rep.max_violation = worst;
    rep.verdict = worst <= rep.tolerance ? Verdict::Pass : Verdict::Fail;
    rep.note = "pointwise kernel ordering, " + direction_name(sc.direction);
    return rep;
}

// ---- eigenvalue comparison -------------------------------------------------

ComparisonReport eigen_compare(const ComparisonScenario& sc, int n) {
    validate_scenario(sc);
    ComparisonReport rep;
    rep.id = sc.id;
    rep.grid_n = n;
    const Gate gate = check_hypothesis(sc);
    rep.hypothesis_margin = gate.margin;
    if (!gate.pass) {
        rep.verdict = Verdict::NotApplicable;
        rep.note = "hypothesis fails: " + gate.note;
        return rep;
    }
    auto lam = [&](const RadialGeometry& g, int nn) {
        return eigensolve(assemble(g, make_grid(nn, g.radius)), 2);
    };
    const auto sl = lam(sc.lhs, n), sr = lam(sc.rhs, n);
    const auto sl2 = lam(sc.lhs, 2 * n - 1), sr2 = lam(sc.rhs, 2 * n - 1);
    rep.lhs_lambda = sl.lambdas[0];
    rep.rhs_lambda = sr.lambdas[0];
    rep.tolerance = std::max(1e-8, 10.0 * (std::abs(sl.lambdas[0] - sl2.lambdas[0]) +
                                           std::abs(sr.lambdas[0] - sr2.lambdas[0])));
    // kernel ordering LhsGeq corresponds to the reversed eigenvalue ordering
    const double viol = sc.direction == Direction::LhsGeq
                            ? rep.lhs_lambda - rep.rhs_lambda
                            : rep.rhs_lambda - rep.lhs_lambda;
    rep.max_violation = viol;

    // consistency: the large-time log-slope of each kernel reproduces lambda_1
    double slope_gap = 0;
    for (const auto* s : {&sl, &sr}) {
        const double gap = s->lambdas[1] - s->lambdas[0];
        const double t1 = 20.0 / gap, dt = 2.0 / gap;
        auto f = kernel_spectral(*s, TimeGrid::of({t1, t1 + dt}));
        const double slope = std::log(f.values[0][0] / f.values[1][0]) / dt;
        slope_gap = std::max(slope_gap,
                             std::abs(slope - s->lambdas[0]) / std::max(1.0, s->lambdas[0]));
    }
    rep.log_slope_gap = slope_gap;
    rep.verdict = viol <= rep.tolerance ? Verdict::Pass : Verdict::Fail;
    rep.note = "first-eigenvalue ordering induced by the kernel direction";
    return rep;
}

// ---- transplants -----------------------------------------------------------

namespace {

void validate_transplant(const TransplantScenario& ts, int n) {
    ts.model.validate();
    if (ts.model.family != Family::RealSpaceForm)
        throw std::invalid_argument("transplant: model must be a space form");
    if (ts.model.alpha.dirichlet || !(ts.model.alpha.value > 0))
        throw std::invalid_argument("transplant: requires finite alpha > 0");
    if (static_cast<int>(ts.gamma.size()) != n)
        throw std::invalid_argument("transplant: gamma field must match the grid");
    for (double g : ts.gamma)
        if (!(g > 0) || g > 1.0)
            throw std::invalid_argument("transplant: gamma values must lie in (0, 1]");
    if (std::abs(ts.boundary_angle) > 1.0)
        throw std::invalid_argument("transplant: boundary angle must lie in [-1, 1]");
    if (ts.model.kappa > 0) {
        const double sk = std::sqrt(ts.model.kappa);
        if (ts.model.radius > std::atan(ts.model.alpha.value / sk) / sk + 1e-12)
            throw std::invalid_argument(
                "transplant: kappa > 0 requires R <= arctan(alpha/sqrt k)/sqrt k");
    }
}

double gate_slack(const RadialGeometry& g) {
    if (!(g.kappa > 0)) return 0.0;
    const double sk = std::sqrt(g.kappa);
    return std::atan(g.alpha.value / sk) / sk - g.radius;
}

}  // namespace

ComparisonReport transplant_check(const TransplantScenario& ts, const TimeGrid& tgrid, int n) {
    validate_transplant(ts, n);
    ComparisonReport rep;
    rep.id = ts.id;
    rep.grid_n = n;
    rep.hypothesis_margin = gate_slack(ts.model);

    const auto grid = make_grid(n, ts.model.radius);
    const auto spec = eigensolve(assemble(ts.model, grid), std::min(300, n / 4));
    const auto field = kernel_spectral(spec, tgrid);
    const auto sub = substitution_for(ts.model);
    const auto sd = substituted_diagnostics(field, spec, sub);
    for (int k = 0; k < tgrid.size(); ++k) {
        if (sd.slope[k].verdict != Verdict::Pass || sd.convexity[k].verdict != Verdict::Pass) {
            rep.verdict = Verdict::Inconclusive;
            rep.note = "kernel sign diagnostics not established";
            return rep;
        }
    }

    const int m = ts.model.real_dimension();
    const double alpha = ts.model.alpha.value;
    double worst = std::numeric_limits<double>::infinity();
    double defect_max = 0, scale = 0;
    double worst_b = std::numeric_limits<double>::infinity();
    double bdefect = 0, bscale = 0;
    for (int k = 0; k < tgrid.size(); ++k) {
        CubicSpline sp1(sd.sgrid, sd.dphi[k]);
        CubicSpline sp2(sd.sgrid, sd.d2phi[k]);
        const double t = tgrid.times[k];
        for (int j = 0; j < n; ++j) {
            const double r = grid.node(j);
            const double s = sub.s_of_r(r);
            const double p1 = sp1(s), p2 = sp2(s);
            double dHdt = 0;
            for (size_t i = 0; i < spec.lambdas.size(); ++i)
                dHdt -= spec.lambdas[i] * std::exp(-spec.lambdas[i] * t) *
                        spec.center_value(static_cast<int>(i)) * spec.modes[i][j];
            const double snr = sn(ts.model.kappa, r);
            const double drift_term = m * sn_prime(ts.model.kappa, r) * p1;
            const double defect = dHdt - snr * snr * p2 - drift_term;  // model identity
            const double g2 = ts.gamma[j] * ts.gamma[j];
            const double resid = dHdt - g2 * snr * snr * p2 - drift_term;
            defect_max = std::max(defect_max, std::abs(defect));
            scale = std::max(scale, std::abs(dHdt));
            if (resid < worst) {
                worst = resid;
                rep.note = "worst interior residual at r=" + std::to_string(r) +
                           ", t=" + std::to_string(t);
            }
        }
        // boundary: phi' sn(R) <angle> + alpha phi >= 0, with equality at angle = 1
        const int last = n - 1;
        const double snR = sn(ts.model.kappa, ts.model.radius);
        const double p1R = sp1(sd.sgrid[last]);
        const double phiR = sd.phi[k][last];
        bdefect = std::max(bdefect, std::abs(snR * p1R + alpha * phiR));
        bscale = std::max(bscale, std::abs(alpha * phiR));
        worst_b = std::min(worst_b, snR * ts.boundary_angle * p1R + alpha * phiR);
    }
    const double tol = std::max(1e-6 * scale, 2.0 * defect_max);
    const double tol_b = std::max(1e-6 * bscale, 2.0 * bdefect);
    rep.tolerance = tol;
    rep.max_violation = -std::min(worst, 0.0);
    rep.verdict = (worst >= -tol && worst_b >= -tol_b) ? Verdict::Pass : Verdict::Fail;
    return rep;
}

ComparisonReport barta_bound(const TransplantScenario& ts, int n) {
    validate_transplant(ts, n);
    ComparisonReport rep;
    rep.id = ts.id;
    rep.grid_n = n;
    rep.hypothesis_margin = gate_slack(ts.model);

    const auto grid = make_grid(n, ts.model.radius);
    const auto spec = eigensolve(assemble(ts.model, grid), 2);
    const auto diag = first_mode_diagnostics(spec, ts.model);
    const auto conv = w_convexity_check(diag, ts.model);
    // Inconclusive convexity is accepted: at the gate boundary lambda_1 = m*kappa
    // and w''(0) degenerates to zero, which is still compatible with the bound.
    if (conv.slope.verdict == Verdict::Fail || conv.convexity.verdict == Verdict::Fail ||
        conv.boundary.verdict != Verdict::Pass) {
        rep.verdict = Verdict::NotApplicable;
        rep.note = "convexity prerequisite unverified";
        return rep;
    }
    const auto sub = substitution_for(ts.model);
    const int m = ts.model.real_dimension();
    const double alpha = ts.model.alpha.value;
    const double lambda = spec.lambdas[0];
    rep.certified_bound = lambda;
    rep.lhs_lambda = lambda;
    rep.rhs_lambda = lambda;

    CubicSpline spw(diag.sgrid, diag.w_of_s);
    CubicSpline sp1(diag.sgrid, diag.dw_ds);
    CubicSpline sp2(diag.sgrid, diag.d2w_ds2);
    double worst = std::numeric_limits<double>::infinity();
    double defect_max = 0, scale = 0;
    for (int j = 0; j < n; ++j) {
        const double r = grid.node(j);
        const double s = sub.s_of_r(r);
        const double snr = sn(ts.model.kappa, r);
        const double common = -m * sn_prime(ts.model.kappa, r) * sp1(s) - lambda * spw(s);
        const double defect = common - snr * snr * sp2(s);  // eigen equation, ~0
        const double g2 = ts.gamma[j] * ts.gamma[j];
        const double resid = common - g2 * snr * snr * sp2(s);
        defect_max = std::max(defect_max, std::abs(defect));
        scale = std::max(scale, std::abs(lambda * spw(s)));
        worst = std::min(worst, resid);
    }
    const int last = n - 1;
    const double snR = sn(ts.model.kappa, ts.model.radius);
    const double bdefect = std::abs(snR * diag.dw_ds[last] + alpha * diag.w_of_s[last]);
    const double worst_b =
        snR * ts.boundary_angle * diag.dw_ds[last] + alpha * diag.w_of_s[last];
    const double tol = std::max(1e-6 * scale, 2.0 * defect_max);
    const double tol_b = std::max(1e-6 * alpha * std::abs(diag.w_of_s[last]), 2.0 * bdefect);
    rep.tolerance = tol;
    rep.max_violation = -std::min(worst, 0.0);
    rep.verdict = (worst >= -tol && worst_b >= -tol_b) ? Verdict::Pass : Verdict::Fail;
    rep.note = "certified lower bound lambda_1(M) >= " + std::to_string(lambda);
    if (ts.model.kappa > 0 && rep.verdict == Verdict::Pass) {
        const double floor_bound = m * ts.model.kappa;
        rep.note += lambda >= floor_bound - 1e-8
                        ? "; bound also >= m*kappa = " + std::to_string(floor_bound)
                        : "";
    }
    return rep;
}

// ---- sharpness probe -------------------------------------------------------

SharpnessProbe kahler_sharpness_probe(int m, double kappa, double radius, double alpha,
                                      const TimeGrid& tgrid, int n) {
    RadialGeometry ka;
    ka.family = Family::Kahler;
    ka.dim = m;
    ka.kappa = kappa;
    ka.radius = radius;
    ka.alpha = RobinParameter::robin(alpha);
    RadialGeometry re;
    re.family = Family::RealSpaceForm;
    re.dim = 2 * m;
    re.kappa = kappa;
    re.radius = radius;
    re.alpha = RobinParameter::robin(alpha);
    const auto fk = kernel_spectral(solve_modes(ka, n), tgrid);
    const auto fr = kernel_spectral(solve_modes(re, n), tgrid);
    SharpnessProbe probe;
    probe.min_gap = std::numeric_limits<double>::infinity();
    probe.max_gap = -std::numeric_limits<double>::infinity();
    int above = 0, total = 0;
    for (int k = 0; k < tgrid.size(); ++k)
        for (int j = 0; j < n; ++j) {
            const double gap = fk.values[k][j] - fr.values[k][j];
            probe.min_gap = std::min(probe.min_gap, gap);
            probe.max_gap = std::max(probe.max_gap, gap);
            above += gap > 0;
            ++total;
        }
    probe.frac_kahler_above = static_cast<double>(above) / total;
    return probe;
}

}  // namespace rhk
