#include "rhk/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rhk {

std::vector<double> Grid::nodes() const {
    std::vector<double> xs(n);
    for (int j = 0; j < n; ++j) xs[j] = node(j);
    return xs;
}

Grid make_grid(int n, double length) {
    if (n < 64) throw std::invalid_argument("make_grid: need at least 64 nodes");
    if (!(length > 0)) throw std::invalid_argument("make_grid: length must be positive");
    return Grid{n, length};
}

std::vector<double> derivative4(std::span<const double> y, double h) {
    const int n = static_cast<int>(y.size());
    if (n < 6) throw std::invalid_argument("derivative4: need at least 6 samples");
    std::vector<double> d(n);
    // one-sided 5-point (4th order) at the two nodes of each end
    auto onesided = [&](int j, int sgn) {
        return sgn *
               (-25.0 * y[j] + 48.0 * y[j + sgn] - 36.0 * y[j + 2 * sgn] +
                16.0 * y[j + 3 * sgn] - 3.0 * y[j + 4 * sgn]) /
               (12.0 * h);
    };
    auto skewed = [&](int j, int sgn) {
        return sgn *
               (-3.0 * y[j - sgn] - 10.0 * y[j] + 18.0 * y[j + sgn] - 6.0 * y[j + 2 * sgn] +
                y[j + 3 * sgn]) /
               (12.0 * h);
    };
    d[0] = onesided(0, 1);
    d[1] = skewed(1, 1);
    d[n - 1] = onesided(n - 1, -1);
    d[n - 2] = skewed(n - 2, -1);
    for (int j = 2; j < n - 2; ++j)
        d[j] = (y[j - 2] - 8.0 * y[j - 1] + 8.0 * y[j + 1] - y[j + 2]) / (12.0 * h);
    return d;
}

double deriv_at_end(std::span<const double> y, double h) {
    const auto n = y.size();
    return (137.0 * y[n - 1] - 300.0 * y[n - 2] + 300.0 * y[n - 3] - 200.0 * y[n - 4] +
            75.0 * y[n - 5] - 12.0 * y[n - 6]) /
           (60.0 * h);
}

double deriv2_at_end(std::span<const double> y, double h) {
    const auto n = y.size();
    return (45.0 * y[n - 1] - 154.0 * y[n - 2] + 214.0 * y[n - 3] - 156.0 * y[n - 4] +
            61.0 * y[n - 5] - 10.0 * y[n - 6]) /
           (12.0 * h * h);
}

double deriv3_at_end(std::span<const double> y, double h) {
    const auto n = y.size();
    return (17.0 * y[n - 1] - 71.0 * y[n - 2] + 118.0 * y[n - 3] - 98.0 * y[n - 4] +
            41.0 * y[n - 5] - 7.0 * y[n - 6]) /
           (4.0 * h * h * h);
}

double deriv_at_start(std::span<const double> y, double h) {
    return -(137.0 * y[0] - 300.0 * y[1] + 300.0 * y[2] - 200.0 * y[3] + 75.0 * y[4] -
             12.0 * y[5]) /
           (60.0 * h);
}

double deriv2_at_start(std::span<const double> y, double h) {
    return (45.0 * y[0] - 154.0 * y[1] + 214.0 * y[2] - 156.0 * y[3] + 61.0 * y[4] -
            10.0 * y[5]) /
           (12.0 * h * h);
}

double integrate(double a, double b, double abs_tol, const std::function<double(double)>& f) {
    int panels = 8;
    double prev = 0;
    for (int iter = 0; iter < 16; ++iter) {
        double acc = 0;
        const double w = (b - a) / panels;
        for (int i = 0; i < panels; ++i) acc += gauss5(a + i * w, a + (i + 1) * w, f);
        if (iter > 0 && std::abs(acc - prev) < abs_tol) return acc;
        prev = acc;
        panels *= 2;
    }
    return prev;
}

// ---- CubicSpline -----------------------------------------------------------

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const int n = static_cast<int>(x_.size());
    if (n < 4 || y_.size() != x_.size())
        throw std::invalid_argument("CubicSpline: need >= 4 matching samples");
    // Solve for second derivatives m_i with not-a-knot end conditions:
    // m0 and m_{n-1} are eliminated by the third-derivative continuity
    // relations across x_1 and x_{n-2}, leaving a tridiagonal system for
    // m_1 .. m_{n-2}.
    auto hseg = [&](int i) { return x_[i + 1] - x_[i]; };
    const int ni = n - 2;  // interior unknowns
    std::vector<double> lo(ni, 0), di(ni, 0), up(ni, 0), rhs(ni, 0);
    for (int i = 1; i <= n - 2; ++i) {
        lo[i - 1] = hseg(i - 1);
        di[i - 1] = 2.0 * (hseg(i - 1) + hseg(i));
        up[i - 1] = hseg(i);
        rhs[i - 1] = 6.0 * ((y_[i + 1] - y_[i]) / hseg(i) - (y_[i] - y_[i - 1]) / hseg(i - 1));
    }
    // m0 = ((h0+h1) m1 - h0 m2) / h1
    di[0] += lo[0] * (hseg(0) + hseg(1)) / hseg(1);
    up[0] -= lo[0] * hseg(0) / hseg(1);
    lo[0] = 0;
    // m_{n-1} = ((h_{n-3}+h_{n-2}) m_{n-2} - h_{n-2} m_{n-3}) / h_{n-3}
    di[ni - 1] += up[ni - 1] * (hseg(n - 3) + hseg(n - 2)) / hseg(n - 3);
    lo[ni - 1] -= up[ni - 1] * hseg(n - 2) / hseg(n - 3);
    up[ni - 1] = 0;

    std::vector<double> mi = solve_tridiagonal(lo, di, up, rhs);
    std::vector<double> m(n);
    for (int i = 0; i < ni; ++i) m[i + 1] = mi[i];
    m[0] = ((hseg(0) + hseg(1)) * m[1] - hseg(0) * m[2]) / hseg(1);
    m[n - 1] = ((hseg(n - 3) + hseg(n - 2)) * m[n - 2] - hseg(n - 2) * m[n - 3]) / hseg(n - 3);
    b_.resize(n - 1);
    c_.resize(n - 1);
    d_.resize(n - 1);
    for (int i = 0; i < n - 1; ++i) {
        const double hi = hseg(i);
        c_[i] = 0.5 * m[i];
        d_[i] = (m[i + 1] - m[i]) / (6.0 * hi);
        b_[i] = (y_[i + 1] - y_[i]) / hi - hi * (2.0 * m[i] + m[i + 1]) / 6.0;
    }
}

int CubicSpline::find_interval(double xq) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), xq);
    int i = static_cast<int>(it - x_.begin()) - 1;
    return std::clamp(i, 0, static_cast<int>(x_.size()) - 2);
}

double CubicSpline::operator()(double xq) const {
    const int i = find_interval(xq);
    const double t = xq - x_[i];
    return y_[i] + t * (b_[i] + t * (c_[i] + t * d_[i]));
}

double CubicSpline::derivative(double xq) const {
    const int i = find_interval(xq);
    const double t = xq - x_[i];
    return b_[i] + t * (2.0 * c_[i] + 3.0 * t * d_[i]);
}

// ---- MonotoneMap -----------------------------------------------------------

MonotoneMap::MonotoneMap(std::vector<double> x, std::vector<double> y, std::vector<double> dydx)
    : x_(std::move(x)), y_(std::move(y)), d_(std::move(dydx)) {
    if (x_.size() < 2 || x_.size() != y_.size() || x_.size() != d_.size())
        throw std::invalid_argument("MonotoneMap: inconsistent sample arrays");
    for (size_t i = 1; i < y_.size(); ++i)
        if (!(y_[i] > y_[i - 1]))
            throw std::invalid_argument("MonotoneMap: y samples must be strictly increasing");
}

double MonotoneMap::hermite(int i, double x) const {
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y_[i] + (t3 - 2 * t2 + t) * h * d_[i] +
           (-2 * t3 + 3 * t2) * y_[i + 1] + (t3 - t2) * h * d_[i + 1];
}

double MonotoneMap::hermite_deriv(int i, double x) const {
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    return ((6 * t * t - 6 * t) * (y_[i] - y_[i + 1]) / h + (3 * t * t - 4 * t + 1) * d_[i] +
            (3 * t * t - 2 * t) * d_[i + 1]);
}

double MonotoneMap::forward(double x) const {
    x = std::clamp(x, x_.front(), x_.back());
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    int i = std::clamp(static_cast<int>(it - x_.begin()) - 1, 0, static_cast<int>(x_.size()) - 2);
    return hermite(i, x);
}

double MonotoneMap::derivative(double x) const {
    x = std::clamp(x, x_.front(), x_.back());
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    int i = std::clamp(static_cast<int>(it - x_.begin()) - 1, 0, static_cast<int>(x_.size()) - 2);
    return hermite_deriv(i, x);
}

double MonotoneMap::inverse(double y) const {
    y = std::clamp(y, y_.front(), y_.back());
    auto it = std::upper_bound(y_.begin(), y_.end(), y);
    int i = std::clamp(static_cast<int>(it - y_.begin()) - 1, 0, static_cast<int>(y_.size()) - 2);
    // Newton on the Hermite segment, bisection fallback.
    double a = x_[i], b = x_[i + 1];
    double x = a + (b - a) * (y - y_[i]) / (y_[i + 1] - y_[i]);
    for (int k = 0; k < 50; ++k) {
        const double fy = hermite(i, x) - y;
        if (fy > 0)
            b = x;
        else
            a = x;
        const double df = hermite_deriv(i, x);
        double step = (df != 0.0) ? fy / df : 0.0;
        double xn = x - step;
        if (!(xn > a && xn < b)) xn = 0.5 * (a + b);
        if (std::abs(xn - x) < 1e-15 * std::max(1.0, std::abs(x))) return xn;
        x = xn;
    }
    return x;
}

// ---- tridiagonal -----------------------------------------------------------

std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs) {
    const int n = static_cast<int>(diag.size());
    std::vector<double> c(n), d(n), x(n);
    c[0] = upper[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for (int i = 1; i < n; ++i) {
        const double m = diag[i] - lower[i] * c[i - 1];
        c[i] = (i < n - 1) ? upper[i] / m : 0.0;
        d[i] = (rhs[i] - lower[i] * d[i - 1]) / m;
    }
    x[n - 1] = d[n - 1];
    for (int i = n - 2; i >= 0; --i) x[i] = d[i] - c[i] * x[i + 1];
    return x;
}

Extrapolated extrapolate_to_zero(std::span<const double> x, std::span<const double> y) {
    const int n = static_cast<int>(x.size());
    std::vector<double> t(y.begin(), y.end());
    double prev = t[0];
    for (int level = 1; level < n; ++level) {
        for (int i = 0; i < n - level; ++i)
            t[i] = (x[i + level] * t[i] - x[i] * t[i + 1]) / (x[i + level] - x[i]);
        if (level == n - 1) return {t[0], std::abs(t[0] - prev)};
        prev = t[0];
    }
    return {t[0], 0.0};
}

}  // namespace rhk
