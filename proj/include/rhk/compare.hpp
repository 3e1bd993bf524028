#pragma once

// Hypothesis-gated verdicts for the kernel and eigenvalue comparison
// inequalities, the sub/supersolution residual machinery behind them, and
// the transplant-based supersolution and lower-bound certificates.

#include "rhk/geometry.hpp"
#include "rhk/heat.hpp"
#include "rhk/sturm.hpp"

#include <string>
#include <vector>

namespace rhk {

enum class Direction { LhsGeq, LhsLeq };
enum class Hypothesis { RicciLower, SectUpper, KahlerBounds, QuaternionBounds };

std::string direction_name(Direction d);
std::string hypothesis_name(Hypothesis h);

struct ComparisonScenario {
    std::string id;
    RadialGeometry lhs;  // the "manifold" side
    RadialGeometry rhs;  // the model ball
    Direction direction = Direction::LhsGeq;
    Hypothesis hypothesis = Hypothesis::RicciLower;
};

struct TransplantScenario {
    std::string id;
    RadialGeometry model;       // space form
    std::vector<double> gamma;  // per grid node, in (0,1]
    double boundary_angle = 1.0;  // cosine of the outward angle, in [-1,1]
};

struct ComparisonReport {
    std::string id;
    Verdict verdict = Verdict::Inconclusive;
    double hypothesis_margin = 0;  // min slack of the gate inequality
    double max_violation = 0;      // worst signed violation over the grid
    double tolerance = 0;          // discretization + tail budget
    int grid_n = 0;
    std::string note;
    double lhs_lambda = 0, rhs_lambda = 0;  // eigen comparisons
    double log_slope_gap = 0;               // kernel log-slope vs lambda_1
    double certified_bound = 0;             // Barta certificate
};

enum class ResidualMode { Super, Sub };

struct ResidualReport {
    Verdict verdict = Verdict::Inconclusive;
    double worst_interior = 0;  // signed; Super wants >= -tol, Sub <= +tol
    double worst_boundary = 0;
    double worst_r = 0, worst_t = 0;
    bool first_slice_one_sided = false;  // time derivative flag at t_1
};

// Heat residual d_t F + A F / mu and boundary residual F'(R) + alpha F(R)
// of a positive space-time field, checked against the requested sign.
ResidualReport sub_supersolution_residual(const HeatKernelField& field,
                                          const RadialGeometry& geom, ResidualMode mode,
                                          double tol);

// Pointwise directed kernel inequality on the shared grid, gated by the
// scenario hypothesis; n is the base grid, refinement to 2n feeds the budget.
ComparisonReport kernel_compare(const ComparisonScenario& sc, const TimeGrid& tgrid, int n);

// Directed first-eigenvalue inequality plus the t->infinity log-slope
// consistency of the model kernels.
ComparisonReport eigen_compare(const ComparisonScenario& sc, int n);

// Transplanted-kernel supersolution residuals for a gamma field.
ComparisonReport transplant_check(const TransplantScenario& ts, const TimeGrid& tgrid, int n);

// Transplanted-eigenfunction lower bound lambda_1(M) >= model lambda_1.
ComparisonReport barta_bound(const TransplantScenario& ts, int n);

// Ordering probe between the Kahler model kernel (complex dim m) and the
// real model of dimension 2m at the same curvature bound: fraction of
// space-time nodes where the Kahler kernel is larger, and extreme gaps.
struct SharpnessProbe {
    double frac_kahler_above = 0;
    double min_gap = 0, max_gap = 0;  // kahler minus real
};
SharpnessProbe kahler_sharpness_probe(int m, double kappa, double radius, double alpha,
                                      const TimeGrid& tgrid, int n);

}  // namespace rhk
