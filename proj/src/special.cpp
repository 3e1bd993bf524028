#include "rhk/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rhk {

namespace {
constexpr double kSeriesThreshold = 1e-6;  // switch to series when |k| r^2 below this
}

double sn(double kappa, double r) {
    const double x = kappa * r * r;
    if (std::abs(x) < kSeriesThreshold) {
        // r * (1 - x/6 + x^2/120 - x^3/5040), x = kappa r^2
        return r * (1.0 - x / 6.0 * (1.0 - x / 20.0 * (1.0 - x / 42.0)));
    }
    if (kappa > 0.0) {
        const double sq = std::sqrt(kappa);
        return std::sin(sq * r) / sq;
    }
    const double sq = std::sqrt(-kappa);
    return std::sinh(sq * r) / sq;
}

double sn_prime(double kappa, double r) {
    const double x = kappa * r * r;
    if (std::abs(x) < kSeriesThreshold) {
        // 1 - x/2 + x^2/24 - x^3/720
        return 1.0 - x / 2.0 * (1.0 - x / 12.0 * (1.0 - x / 30.0));
    }
    if (kappa > 0.0) return std::cos(std::sqrt(kappa) * r);
    return std::cosh(std::sqrt(-kappa) * r);
}

double sn_eval(double kappa, double r, int order) {
    if (r < 0.0)
        throw std::domain_error("sn_eval: r must be nonnegative, got " + std::to_string(r));
    if (kappa > 0.0 && r > std::numbers::pi / std::sqrt(kappa) * (1.0 + 1e-12))
        throw std::domain_error("sn_eval: r exceeds pi/sqrt(kappa)");
    switch (order) {
        case 0: return sn(kappa, r);
        case 1: return sn_prime(kappa, r);
        default: throw std::domain_error("sn_eval: order must be 0 or 1");
    }
}

double unit_sphere_area(int d) {
    // area(S^d) = 2 pi^{(d+1)/2} / Gamma((d+1)/2)
    const double p = 0.5 * (d + 1);
    return 2.0 * std::pow(std::numbers::pi, p) / std::tgamma(p);
}

}  // namespace rhk
