#pragma once

// Radial-operator data for geodesic balls in model spaces and rotationally
// symmetric test manifolds: volume weights, drift coefficients, coordinate
// substitutions, and warped-product curvature checks.

#include "rhk/numerics.hpp"
#include "rhk/special.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rhk {

enum class Family { RealSpaceForm, Kahler, QuaternionKahler, CustomWarped };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

struct RobinParameter {
    double value = 1.0;       // alpha >= 0 for comparison theorems
    bool dirichlet = false;   // alpha = +infinity

    static RobinParameter neumann() { return {0.0, false}; }
    static RobinParameter robin(double a) { return {a, false}; }
    static RobinParameter dirichlet_limit() { return {0.0, true}; }
    bool is_neumann() const { return !dirichlet && value == 0.0; }
};

// Warping function f of a rotationally symmetric metric dr^2 + f(r)^2 dtheta^2.
// Either sn with its own curvature parameter, or sampled f, f', f''.
struct WarpingFunction {
    enum class Form { SnKappa, Sampled };
    Form form = Form::SnKappa;
    double kappa_w = 0.0;                       // SnKappa form
    std::vector<double> r, f, df, ddf;          // Sampled form

    static WarpingFunction sn_form(double kappa_w) { return {Form::SnKappa, kappa_w, {}, {}, {}, {}}; }
    static WarpingFunction sampled(std::vector<double> r, std::vector<double> f,
                                   std::vector<double> df, std::vector<double> ddf);

    double value(double rr) const;
    double deriv(double rr) const;
    double deriv2(double rr) const;
    void validate(double radius) const;  // f(0)=0, f'(0)=1, f>0 on (0,R]
};

struct RadialGeometry {
    Family family = Family::RealSpaceForm;
    int dim = 3;        // real dim for RealSpaceForm/CustomWarped, complex for
                        // Kahler, quaternionic for QuaternionKahler
    double kappa = 0.0;
    double radius = 1.0;
    RobinParameter alpha;
    std::optional<WarpingFunction> warping;  // CustomWarped only

    void validate() const;          // throws std::invalid_argument
    int real_dimension() const;     // m, 2m or 4m
    double weight(double r) const;  // w(r), vanishing at 0, positive on (0,R]
    double drift(double r) const;   // c(r) = w'/w, r > 0
    double speed(double r) const;   // substitution speed s'(r) = w^{1/(n-1)}
    double sphere_area() const;     // normalization constant omega
};

// Monotone substitution s(r) with s(0)=0, s'(r)=speed(r); closed form for
// space forms, quadrature + Hermite inversion otherwise.
struct Substitution {
    MonotoneMap map;                   // r -> s
    double s_of_r(double r) const { return map.forward(r); }
    double r_of_s(double s) const { return map.inverse(s); }
    double speed(double r) const { return map.derivative(r); }
    double s_max() const { return map.y_max(); }
};

Substitution substitution_for(const RadialGeometry& geom);

enum class CurvatureMode { RicciLower, SectUpper };

struct HypothesisReport {
    bool pass = false;
    double margin = 0;    // signed distance from the bound, positive = satisfied
    double worst_r = 0;
    std::string note;     // formulas used; indeterminate-origin flag
};

// Checks warped-product curvature against the bound kappa.
//   RicciLower: Ric >= (dim-1)*kappa, from radial part (dim-1)(-f''/f) and
//               tangential part -f''/f + (dim-2)(1-f'^2)/f^2.
//   SectUpper:  max(-f''/f, (1-f'^2)/f^2) <= kappa.
// The curvature formulas are standard warped-product geometry; this check is
// the sole gatekeeper for comparison scenarios with warped lhs manifolds.
HypothesisReport hypothesis_check(const WarpingFunction& warping, int dim, double kappa,
                                  CurvatureMode mode, double radius, double tol = 1e-8);

}  // namespace rhk
