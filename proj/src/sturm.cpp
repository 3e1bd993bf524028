#include "rhk/sturm.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rhk {

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Inconclusive: return "inconclusive";
        case Verdict::NotApplicable: return "not-applicable";
    }
    return "?";
}

// ---- assembly --------------------------------------------------------------

DiscreteOperator assemble(const RadialGeometry& geom, const Grid& grid) {
    geom.validate();
    if (grid.n < 64) throw std::invalid_argument("assemble: grid too coarse (n < 64)");
    DiscreteOperator op;
    op.grid = grid;
    op.geom = geom;
    op.dirichlet = geom.alpha.dirichlet;
    const int n = grid.n;
    const double h = grid.h();
    op.weight.resize(n);
    op.flux.resize(n - 1);
    op.mass.resize(n);
    for (int j = 0; j < n; ++j) op.weight[j] = geom.weight(grid.node(j));
    for (int j = 0; j < n - 1; ++j)
        op.flux[j] = geom.weight(grid.node(j) + 0.5 * h) / h;
    for (int j = 0; j < n; ++j) {
        const double a = std::max(0.0, grid.node(j) - 0.5 * h);
        const double b = std::min(grid.length, grid.node(j) + 0.5 * h);
        op.mass[j] = gauss5(a, b, [&](double r) { return geom.weight(r); });
    }
    // The vanishing weight must be resolved near r = 0.
    const double wmax = *std::max_element(op.weight.begin(), op.weight.end());
    int small_nodes = 0;
    for (double w : op.weight)
        if (w < wmax / 100.0) ++small_nodes;
    if (small_nodes < 8)
        throw std::invalid_argument(
            "assemble: grid too coarse to resolve the vanishing weight near r=0");
    op.robin_term = op.dirichlet ? 0.0 : geom.alpha.value * op.weight[n - 1];
    return op;
}

void DiscreteOperator::interior_apply(std::span<const double> u, std::span<double> out) const {
    const int n = unknowns();
    for (int j = 0; j < n; ++j) {
        double acc = 0;
        if (j > 0) acc += flux[j - 1] * (u[j] - u[j - 1]);
        if (j < n - 1) acc += flux[j] * (u[j] - u[j + 1]);
        if (dirichlet && j == n - 1) acc += flux[j] * u[j];  // ghost zero at r=R
        out[j] = acc;
    }
}

void DiscreteOperator::apply(std::span<const double> u, std::span<double> out) const {
    interior_apply(u, out);
    if (!dirichlet) out[unknowns() - 1] += robin_term * u[unknowns() - 1];
}

double DiscreteOperator::stiffness_form(std::span<const double> u) const {
    const int n = unknowns();
    double acc = 0;
    for (int j = 0; j < n - 1; ++j) {
        const double d = u[j + 1] - u[j];
        acc += flux[j] * d * d;
    }
    if (dirichlet)
        acc += flux[n - 1] * u[n - 1] * u[n - 1];
    else
        acc += robin_term * u[n - 1] * u[n - 1];
    return acc;
}

double DiscreteOperator::mass_form(std::span<const double> u) const {
    const int n = unknowns();
    double acc = 0;
    for (int j = 0; j < n; ++j) acc += mass[j] * u[j] * u[j];
    return acc;
}

void DiscreteOperator::symmetrized(std::vector<double>& diag, std::vector<double>& offdiag) const {
    const int n = unknowns();
    diag.assign(n, 0.0);
    offdiag.assign(n - 1, 0.0);
    for (int j = 0; j < n; ++j) {
        double a = 0;
        if (j > 0) a += flux[j - 1];
        if (j < n - 1) a += flux[j];
        if (dirichlet && j == n - 1) a += flux[j];
        if (!dirichlet && j == n - 1) a += robin_term;
        diag[j] = a / mass[j];
    }
    for (int j = 0; j < n - 1; ++j) offdiag[j] = -flux[j] / std::sqrt(mass[j] * mass[j + 1]);
}

// ---- eigensolve ------------------------------------------------------------

SpectralData eigensolve(const DiscreteOperator& op, int k) {
    const int n = op.unknowns();
    if (k < 1 || k > n - 2) throw std::invalid_argument("eigensolve: need 1 <= k <= n-2");
    std::vector<double> diag, off;
    op.symmetrized(diag, off);

    std::vector<double> evals(n), z(static_cast<size_t>(n) * k);
    std::vector<lapack_int> isuppz(2 * std::max(1, k));
    lapack_int found = 0;
    lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, diag.data(), off.data(), 0.0,
                                     0.0, 1, k, 0.0, &found, evals.data(), z.data(), n,
                                     isuppz.data());
    if (info != 0 || found < k)
        throw std::runtime_error("eigensolve: tridiagonal eigensolver failed, info=" +
                                 std::to_string(info));

    SpectralData spec;
    spec.geom = op.geom;
    spec.grid = op.grid;
    spec.norm_constant = op.geom.sphere_area();
    spec.lambdas.assign(evals.begin(), evals.begin() + k);
    for (int i = 1; i < k; ++i)
        if (spec.lambdas[i] < spec.lambdas[i - 1])
            throw std::runtime_error("eigensolve: spectrum not ascending");

    const double inv_sqrt_omega = 1.0 / std::sqrt(spec.norm_constant);
    spec.modes.assign(k, std::vector<double>(op.grid.n, 0.0));
    for (int i = 0; i < k; ++i) {
        auto& phi = spec.modes[i];
        for (int j = 0; j < n; ++j)
            phi[j] = z[static_cast<size_t>(i) * n + j] / std::sqrt(op.mass[j]) * inv_sqrt_omega;
        // sign convention: phi(0) >= 0 when nonzero, else largest entry positive
        double anchor = phi[0];
        double amax = 0;
        for (int j = 0; j < n; ++j) amax = std::max(amax, std::abs(phi[j]));
        if (std::abs(anchor) < 1e-8 * amax) {
            anchor = *std::max_element(phi.begin(), phi.end(),
                                       [](double a, double b) { return std::abs(a) < std::abs(b); });
        }
        if (anchor < 0)
            for (auto& v : phi) v = -v;
        // refine the eigenvalue through the discrete Rayleigh quotient so that
        // lambdas[i] and the quadratic forms agree to machine precision
        std::span<const double> uview(phi.data(), n);
        spec.lambdas[i] = op.stiffness_form(uview) / op.mass_form(uview);
    }
    for (int i = 1; i < k; ++i)
        spec.lambdas[i] = std::max(spec.lambdas[i], spec.lambdas[i - 1]);
    return spec;
}

double rayleigh(std::span<const double> u, const DiscreteOperator& op) {
    const double denom = op.mass_form(u);
    if (denom <= 0)
        throw std::invalid_argument("rayleigh: u must be nonzero in the weighted norm");
    return op.stiffness_form(u) / denom;
}

// ---- first-mode diagnostics ------------------------------------------------

namespace {

CheckResult sign_check(std::span<const double> values, std::span<const double> xs, int first,
                       double floor, bool want_negative, const std::string& what) {
    // want_negative: values must stay below +floor, strict pass below -floor
    CheckResult res;
    double worst = want_negative ? -std::numeric_limits<double>::infinity()
                                 : std::numeric_limits<double>::infinity();
    for (size_t j = first; j < values.size(); ++j) {
        const double v = values[j];
        if (want_negative ? (v > worst) : (v < worst)) {
            worst = v;
            res.worst_x = xs[j];
        }
    }
    const double signed_worst = want_negative ? -worst : worst;
    res.margin = signed_worst;
    if (signed_worst > floor)
        res.verdict = Verdict::Pass;
    else if (signed_worst > -floor)
        res.verdict = Verdict::Inconclusive;
    else
        res.verdict = Verdict::Fail;
    res.note = what;
    return res;
}

}  // namespace

EigfuncDiagnostics first_mode_diagnostics(const SpectralData& spec, const RadialGeometry& geom) {
    if (geom.alpha.dirichlet || !(geom.alpha.value > 0))
        throw std::invalid_argument("first_mode_diagnostics: requires finite alpha > 0");
    EigfuncDiagnostics d;
    d.u = spec.modes.at(0);
    d.lambda = spec.lambdas.at(0);
    const int n = spec.grid.n;
    const double h = spec.grid.h();
    const auto xs = spec.grid.nodes();
    d.du = derivative4(d.u, h);

    double umax = 0, dumax = 0;
    for (int j = 0; j < n; ++j) {
        umax = std::max(umax, std::abs(d.u[j]));
        dumax = std::max(dumax, std::abs(d.du[j]));
    }
    const double floor_du = 1e-9 * dumax;

    d.monotone = sign_check(d.du, xs, 1, floor_du, true, "u' < 0 on (0,R]");

    // (log u)' nonincreasing: q_{j+1} <= q_j
    {
        CheckResult res;
        res.note = "(log u)' nonincreasing";
        double worst = std::numeric_limits<double>::infinity();
        std::vector<double> q(n);
        for (int j = 0; j < n; ++j) q[j] = d.du[j] / d.u[j];
        q[0] = 0.0;  // radial symmetry
        double qscale = 0;
        for (int j = 0; j < n; ++j) qscale = std::max(qscale, std::abs(q[j]));
        const double floor_q = 1e-8 * std::max(qscale, 1.0);
        for (int j = 0; j + 1 < n; ++j) {
            const double m = q[j] - q[j + 1];
            if (m < worst) {
                worst = m;
                res.worst_x = xs[j + 1];
            }
        }
        res.margin = worst;
        res.verdict = worst > floor_q    ? Verdict::Pass
                      : worst > -floor_q ? Verdict::Inconclusive
                                         : Verdict::Fail;
        d.log_concavity = res;
    }

    // u' >= -alpha u, non-strict: equality holds at r=R through the Robin row,
    // so the floor absorbs the O(h) boundary residual of the scheme
    {
        CheckResult res;
        res.note = "u' >= -alpha u on (0,R]";
        const double floor_rb = 10.0 * h * (std::abs(d.lambda) + geom.alpha.value) * umax;
        double worst = std::numeric_limits<double>::infinity();
        for (int j = 1; j < n; ++j) {
            const double slack = d.du[j] + geom.alpha.value * d.u[j];
            if (slack < worst) {
                worst = slack;
                res.worst_x = xs[j];
            }
        }
        res.margin = worst;
        res.verdict = worst >= -floor_rb ? Verdict::Pass : Verdict::Fail;
        d.robin_slope = res;
    }

    // g(r) = m (sn'/sn) u' + lambda u
    const int m = geom.real_dimension();
    d.g.resize(n);
    for (int j = 1; j < n; ++j) {
        const double r = xs[j];
        d.g[j] = m * sn_prime(geom.kappa, r) / sn(geom.kappa, r) * d.du[j] + d.lambda * d.u[j];
    }
    {
        std::vector<double> xe = {xs[1], xs[2], xs[3], xs[4]};
        std::vector<double> ye = {d.g[1], d.g[2], d.g[3], d.g[4]};
        d.g[0] = extrapolate_to_zero(xe, ye).value;
    }

    // u rewritten as w(s) on a uniform s grid
    const Substitution sub = substitution_for(geom);
    const double smax = sub.s_max();
    CubicSpline uspline(xs, d.u);
    d.sgrid.resize(n);
    d.w_of_s.resize(n);
    const double hs = smax / (n - 1);
    for (int j = 0; j < n; ++j) {
        d.sgrid[j] = hs * j;
        d.w_of_s[j] = uspline(sub.r_of_s(d.sgrid[j]));
    }
    d.dw_ds = derivative4(d.w_of_s, hs);
    d.d2w_ds2 = derivative4(d.dw_ds, hs);
    return d;
}

CheckResult lambda_lower_bound_check(const RadialGeometry& geom, const SpectralData& spec) {
    CheckResult res;
    if (!(geom.kappa > 0) || geom.alpha.dirichlet || !(geom.alpha.value > 0)) {
        res.verdict = Verdict::NotApplicable;
        res.note = "requires kappa > 0 and finite alpha > 0";
        return res;
    }
    const double sk = std::sqrt(geom.kappa);
    if (sk * geom.radius >= std::numbers::pi / 2 ||
        sk * std::tan(sk * geom.radius) > geom.alpha.value) {
        res.verdict = Verdict::NotApplicable;
        res.note = "hypothesis sqrt(k) tan(sqrt(k) R) <= alpha fails";
        return res;
    }
    const int m = geom.real_dimension();
    const double bound = m * geom.kappa;
    res.margin = spec.lambdas.at(0) - bound;
    res.verdict = res.margin >= -1e-8 * std::max(1.0, bound) ? Verdict::Pass : Verdict::Fail;
    res.note = "lambda_1 >= m*kappa";
    return res;
}

GLimits g_limit_diagnostics(const EigfuncDiagnostics& diag, double lambda,
                            const RadialGeometry& geom) {
    if (geom.family != Family::RealSpaceForm)
        throw std::invalid_argument("g_limit_diagnostics: space-form geometry required");
    GLimits out;
    const int n = static_cast<int>(diag.g.size());
    const double h = geom.radius / (n - 1);

    // Least-squares degree-4 fit of g over a window near r = 0; the fit
    // averages out eigenvector noise that finite differencing would amplify
    // by h^-2. Two window sizes give a spread estimate.
    auto fit = [&](int jmax, double coef[3]) {
        const int rows = jmax;  // nodes j = 1..jmax; g[0] is itself extrapolated
        std::vector<double> a(static_cast<size_t>(rows) * 5), b(rows);
        for (int i = 0; i < rows; ++i) {
            const double r = (i + 1) * h;
            double p = 1.0;
            for (int c = 0; c < 5; ++c) {
                a[i + static_cast<size_t>(c) * rows] = p;
                p *= r;
            }
            b[i] = diag.g[i + 1];
        }
        const int info = LAPACKE_dgels(LAPACK_COL_MAJOR, 'N', rows, 5, 1, a.data(), rows,
                                       b.data(), rows);
        if (info != 0) throw std::runtime_error("g_limit_diagnostics: dgels failed");
        coef[0] = b[0];
        coef[1] = b[1];
        coef[2] = 2.0 * b[2];
    };
    const int jwide = n / 4, jnarrow = n / 8;
    if (jnarrow < 16) throw std::invalid_argument("g_limit_diagnostics: grid too coarse");
    double wide[3], narrow[3];
    fit(jwide, wide);
    fit(jnarrow, narrow);
    out.g0 = narrow[0];
    out.g0_spread = std::abs(narrow[0] - wide[0]);
    out.dg0 = narrow[1];
    out.dg0_spread = std::abs(narrow[1] - wide[1]);
    out.ddg0 = narrow[2];
    out.ddg0_spread = std::abs(narrow[2] - wide[2]);
    const int m = geom.real_dimension();
    out.ddg0_expected =
        -2.0 * lambda * (lambda - geom.kappa * m) / (m * (m + 2.0)) * diag.u[0];
    const double scale = std::abs(lambda) * std::max(1e-30, std::abs(diag.u[0]));
    out.unstable =
        out.ddg0_spread > 0.1 * std::max(std::abs(out.ddg0_expected), 1e-3 * scale);
    return out;
}

ConvexityResult w_convexity_check(const EigfuncDiagnostics& diag, const RadialGeometry& geom) {
    if (geom.alpha.dirichlet || !(geom.alpha.value > 0))
        throw std::invalid_argument("w_convexity_check: requires finite alpha > 0");
    if (geom.kappa > 0) {
        const double sk = std::sqrt(geom.kappa);
        if (sk * geom.radius >= std::numbers::pi / 2 ||
            sk * std::tan(sk * geom.radius) > geom.alpha.value)
            throw std::invalid_argument(
                "w_convexity_check: kappa > 0 requires sqrt(k) tan(sqrt(k) R) <= alpha");
    }
    ConvexityResult out;
    const int n = static_cast<int>(diag.w_of_s.size());
    double d2max = 0, d1max = 0;
    for (int j = 0; j < n; ++j) {
        d1max = std::max(d1max, std::abs(diag.dw_ds[j]));
        d2max = std::max(d2max, std::abs(diag.d2w_ds2[j]));
    }
    out.slope = sign_check(diag.dw_ds, diag.sgrid, 1, 1e-9 * d1max, true, "w'(s) < 0 on (0,s(R)]");
    {
        std::vector<double> neg(n);
        for (int j = 0; j < n; ++j) neg[j] = -diag.d2w_ds2[j];
        // floor on the natural scale of w, not on max |w''|: in the equality
        // case the mode is linear in s and w'' is pure noise
        const double smax = diag.sgrid.back();
        double wmax = 0;
        for (double v : diag.w_of_s) wmax = std::max(wmax, std::abs(v));
        const double floor_conv =
            1e-6 * (d2max + d1max / smax + wmax / (smax * smax));
        out.convexity =
            sign_check(neg, diag.sgrid, 0, floor_conv, true, "w''(s) > 0 on [0,s(R)]");
    }
    {
        CheckResult res;
        res.note = "sn(R) w'(s(R)) + alpha w(s(R)) = 0";
        const double t1 = sn(geom.kappa, geom.radius) * diag.dw_ds[n - 1];
        const double t2 = geom.alpha.value * diag.w_of_s[n - 1];
        const double resid = t1 + t2;
        const double scale = std::max(std::abs(t1), std::abs(t2));
        const double h = geom.radius / (static_cast<int>(diag.u.size()) - 1);
        res.margin = -std::abs(resid);
        res.worst_x = diag.sgrid[n - 1];
        res.verdict = std::abs(resid) <= 50.0 * h * std::max(scale, 1e-30) ? Verdict::Pass
                                                                           : Verdict::Fail;
        out.boundary = res;
    }
    return out;
}

}  // namespace rhk
