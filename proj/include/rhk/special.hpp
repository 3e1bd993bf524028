#pragma once

// Curvature-normalized trigonometric functions and sphere areas.

namespace rhk {

// sn_k(r): solution of y'' + k*y = 0 with y(0)=0, y'(0)=1.
//   k > 0 : sin(sqrt(k) r)/sqrt(k)
//   k = 0 : r
//   k < 0 : sinh(sqrt(-k) r)/sqrt(-k)
// Evaluated by series when |k| r^2 is tiny so sweeps through k=0 stay smooth.
double sn(double kappa, double r);

// d/dr sn_k(r) = cos / 1 / cosh respectively.
double sn_prime(double kappa, double r);

// order 0 -> sn, order 1 -> sn'. Throws std::domain_error if r < 0, if
// kappa > 0 and r > pi/sqrt(kappa), or for any other order.
double sn_eval(double kappa, double r, int order);

// Surface area of the unit sphere S^d embedded in R^{d+1}.
double unit_sphere_area(int d);

}  // namespace rhk
