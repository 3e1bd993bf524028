#pragma once

// Small numerical toolbox shared across modules: uniform grids, finite
// difference stencils, Gauss quadrature, cubic splines, tridiagonal solves.

#include <functional>
#include <span>
#include <vector>

namespace rhk {

struct Grid {
    int n = 0;          // node count, nodes are x_j = j*h, j = 0..n-1
    double length = 0;  // right endpoint

    double h() const { return length / (n - 1); }
    double node(int j) const { return length * j / (n - 1); }
    std::vector<double> nodes() const;
};

Grid make_grid(int n, double length);  // validates n >= 64, length > 0

// 4th-order first derivative of samples on a uniform grid (centered stencils
// interior, one-sided at the ends). y.size() >= 6.
std::vector<double> derivative4(std::span<const double> y, double h);

// One-sided derivative estimates at the last node of a uniform grid,
// 5th/4th order accurate respectively.
double deriv_at_end(std::span<const double> y, double h);     // f'
double deriv2_at_end(std::span<const double> y, double h);    // f''
double deriv3_at_end(std::span<const double> y, double h);    // f'''
// Same at the first node.
double deriv_at_start(std::span<const double> y, double h);
double deriv2_at_start(std::span<const double> y, double h);

// Integral of f over [a,b] by 5-point Gauss-Legendre.
double gauss5(double a, double b, const auto& f) {
    static constexpr double xs[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                     0.5384693101056831, 0.9061798459386640};
    static constexpr double ws[5] = {0.2369268850561891, 0.4786286704993665,
                                     0.5688888888888889, 0.4786286704993665,
                                     0.2369268850561891};
    const double c = 0.5 * (a + b), d = 0.5 * (b - a);
    double acc = 0;
    for (int i = 0; i < 5; ++i) acc += ws[i] * f(c + d * xs[i]);
    return acc * d;
}

// Composite Gauss integral on [a,b] with panels halved until the result is
// stable to abs_tol.
double integrate(double a, double b, double abs_tol, const std::function<double(double)>& f);

// Natural-free cubic spline with not-a-knot end conditions on a strictly
// increasing abscissa. Evaluation clamps to the data interval.
class CubicSpline {
  public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<double> y);
    double operator()(double xq) const;
    double derivative(double xq) const;

  private:
    std::vector<double> x_, y_, b_, c_, d_;  // piecewise cubic coefficients
    int find_interval(double xq) const;
};

// Monotone increasing map given by samples (x_i, y_i) with known derivative
// dy/dx > 0 at the samples; cubic Hermite interpolation and Newton inversion.
class MonotoneMap {
  public:
    MonotoneMap() = default;
    MonotoneMap(std::vector<double> x, std::vector<double> y, std::vector<double> dydx);
    double forward(double x) const;        // y(x)
    double inverse(double y) const;        // x(y)
    double derivative(double x) const;     // dy/dx interpolated
    double y_max() const { return y_.back(); }
    double x_max() const { return x_.back(); }

  private:
    std::vector<double> x_, y_, d_;
    double hermite(int i, double x) const;
    double hermite_deriv(int i, double x) const;
};

// Solves tridiagonal system (lower, diag, upper) in-place safe copies.
std::vector<double> solve_tridiagonal(std::span<const double> lower,
                                      std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs);

// Polynomial extrapolation of (x_i, y_i) to x = 0 (Neville). Returns the
// extrapolated value and the spread between the last two table columns as an
// instability estimate.
struct Extrapolated {
    double value = 0;
    double spread = 0;
};
Extrapolated extrapolate_to_zero(std::span<const double> x, std::span<const double> y);

}  // namespace rhk
