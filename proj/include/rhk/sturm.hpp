#pragma once

// Finite-volume discretization and eigensolve of the singular Robin
// Sturm-Liouville problem -(1/w)(w u')' = lambda u on [0,R], u'(0)=0,
// u'(R) + alpha u(R) = 0, plus the first-mode diagnostics used by the
// sign lemmas and the Barta bound.

#include "rhk/geometry.hpp"
#include "rhk/numerics.hpp"

#include <span>
#include <string>
#include <vector>

namespace rhk {

enum class Verdict { Pass, Fail, Inconclusive, NotApplicable };
std::string verdict_name(Verdict v);

struct DiscreteOperator {
    Grid grid;
    RadialGeometry geom;
    std::vector<double> weight;   // w at nodes (full grid)
    std::vector<double> flux;     // w at midpoints / h, size N-1
    std::vector<double> mass;     // cell masses mu_j = int_cell w dr
    bool dirichlet = false;       // last node removed
    double robin_term = 0;        // alpha * w(R) added to the last diagonal

    int unknowns() const { return dirichlet ? grid.n - 1 : grid.n; }

    // Quadratic forms of the discretization: stiffness includes the Robin
    // boundary term, interior_apply leaves it out (used for PDE residuals).
    void apply(std::span<const double> u, std::span<double> out) const;           // A u
    void interior_apply(std::span<const double> u, std::span<double> out) const;  // A u - boundary
    double stiffness_form(std::span<const double> u) const;  // u^T A u
    double mass_form(std::span<const double> u) const;       // u^T M u

    // Symmetrized tridiagonal B = D^{-1/2} A D^{-1/2}, D = diag(mass).
    void symmetrized(std::vector<double>& diag, std::vector<double>& offdiag) const;
};

DiscreteOperator assemble(const RadialGeometry& geom, const Grid& grid);

struct SpectralData {
    RadialGeometry geom;
    Grid grid;
    std::vector<double> lambdas;              // ascending
    std::vector<std::vector<double>> modes;   // modes[i][j] on the full grid,
                                              // Dirichlet pads the last node with 0
    double norm_constant = 0;                 // omega: sum phi_i^2 mu_j * omega = 1

    double center_value(int i) const { return modes[i][0]; }
};

SpectralData eigensolve(const DiscreteOperator& op, int k);

// Rayleigh quotient of the discrete forms; >= lambda_1 for any nonzero u.
double rayleigh(std::span<const double> u, const DiscreteOperator& op);

struct CheckResult {
    Verdict verdict = Verdict::Inconclusive;
    double margin = 0;      // worst signed margin (positive = satisfied)
    double worst_x = 0;
    std::string note;
};

struct EigfuncDiagnostics {
    std::vector<double> u;     // first mode on the grid
    std::vector<double> du;    // 4th-order derivative samples
    std::vector<double> g;     // m (sn'/sn) u' + lambda u, g[0] extrapolated
    // u re-expressed in the s variable on a uniform s-grid
    std::vector<double> sgrid, w_of_s, dw_ds, d2w_ds2;
    double lambda = 0;

    CheckResult monotone;      // u' < 0 on (0,R]
    CheckResult log_concavity; // (log u)' nonincreasing
    CheckResult robin_slope;   // u' >= -alpha u
};

EigfuncDiagnostics first_mode_diagnostics(const SpectralData& spec, const RadialGeometry& geom);

// Lemma-style lower bound check: if sqrt(k) tan(sqrt(k) R) <= alpha then
// lambda_1 >= m*kappa. NotApplicable when the hypothesis fails.
CheckResult lambda_lower_bound_check(const RadialGeometry& geom, const SpectralData& spec);

struct GLimits {
    double g0 = 0, g0_spread = 0;      // lim g
    double dg0 = 0, dg0_spread = 0;    // lim g'
    double ddg0 = 0, ddg0_spread = 0;  // lim g''
    double ddg0_expected = 0;          // -2 lambda (lambda - kappa m) / (m (m+2)) * u(0)
    bool unstable = false;             // successive estimates disagree badly
};

GLimits g_limit_diagnostics(const EigfuncDiagnostics& diag, double lambda,
                            const RadialGeometry& geom);

struct ConvexityResult {
    CheckResult slope;       // w'(s) < 0 on (0, s(R)]
    CheckResult convexity;   // w''(s) > 0 on [0, s(R)]
    CheckResult boundary;    // sn(R) w'(s(R)) + alpha w(s(R)) = 0
};

ConvexityResult w_convexity_check(const EigfuncDiagnostics& diag, const RadialGeometry& geom);

}  // namespace rhk
