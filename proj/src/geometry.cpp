#include "rhk/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rhk {

std::string family_name(Family f) {
    switch (f) {
        case Family::RealSpaceForm: return "real";
        case Family::Kahler: return "kahler";
        case Family::QuaternionKahler: return "quaternion";
        case Family::CustomWarped: return "warped";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    if (name == "real") return Family::RealSpaceForm;
    if (name == "kahler") return Family::Kahler;
    if (name == "quaternion") return Family::QuaternionKahler;
    if (name == "warped") return Family::CustomWarped;
    throw std::invalid_argument("unknown geometry family: " + name);
}

// ---- WarpingFunction -------------------------------------------------------

WarpingFunction WarpingFunction::sampled(std::vector<double> r, std::vector<double> f,
                                         std::vector<double> df, std::vector<double> ddf) {
    WarpingFunction w;
    w.form = Form::Sampled;
    w.r = std::move(r);
    w.f = std::move(f);
    w.df = std::move(df);
    w.ddf = std::move(ddf);
    if (w.r.size() < 4 || w.f.size() != w.r.size() || w.df.size() != w.r.size() ||
        w.ddf.size() != w.r.size())
        throw std::invalid_argument("WarpingFunction::sampled: inconsistent arrays");
    return w;
}

namespace {
double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    CubicSpline s(xs, ys);  // note: cold path, sampled warpings are small
    return s(x);
}
}  // namespace

double WarpingFunction::value(double rr) const {
    if (form == Form::SnKappa) return sn(kappa_w, rr);
    return interp(r, f, rr);
}

double WarpingFunction::deriv(double rr) const {
    if (form == Form::SnKappa) return sn_prime(kappa_w, rr);
    return interp(r, df, rr);
}

double WarpingFunction::deriv2(double rr) const {
    if (form == Form::SnKappa) return -kappa_w * sn(kappa_w, rr);
    return interp(r, ddf, rr);
}

void WarpingFunction::validate(double radius) const {
    if (std::abs(value(0.0)) > 1e-12)
        throw std::invalid_argument("warping: f(0) must vanish");
    if (std::abs(deriv(0.0) - 1.0) > 1e-10)
        throw std::invalid_argument("warping: f'(0) must equal 1");
    const int probes = 256;
    for (int i = 1; i <= probes; ++i) {
        const double rr = radius * i / probes;
        if (!(value(rr) > 0.0))
            throw std::invalid_argument("warping: f must be positive on (0,R]");
    }
}

// ---- RadialGeometry --------------------------------------------------------

void RadialGeometry::validate() const {
    if (!(radius > 0)) throw std::invalid_argument("geometry: radius must be positive");
    if (dim < 1) throw std::invalid_argument("geometry: dimension must be positive");
    if (!std::isfinite(kappa)) throw std::invalid_argument("geometry: kappa must be finite");
    if (kappa > 0) {
        const double cap = (family == Family::RealSpaceForm || family == Family::CustomWarped)
                               ? std::numbers::pi / std::sqrt(kappa)
                               : std::numbers::pi / (2.0 * std::sqrt(kappa));
        if (!(radius < cap))
            throw std::invalid_argument("geometry: radius too large for kappa > 0 model");
    }
    if (family == Family::CustomWarped) {
        if (!warping) throw std::invalid_argument("geometry: CustomWarped needs a warping function");
        warping->validate(radius);
    } else if (warping) {
        throw std::invalid_argument("geometry: warping only allowed for CustomWarped");
    }
    if (family == Family::RealSpaceForm && dim < 2)
        throw std::invalid_argument("geometry: real space form needs dim >= 2");
}

int RadialGeometry::real_dimension() const {
    switch (family) {
        case Family::Kahler: return 2 * dim;
        case Family::QuaternionKahler: return 4 * dim;
        default: return dim;
    }
}

double RadialGeometry::weight(double r) const {
    switch (family) {
        case Family::RealSpaceForm:
            return std::pow(sn(kappa, r), dim - 1);
        case Family::Kahler:
            return std::pow(sn(kappa, r), 2 * dim - 2) * sn(4.0 * kappa, r);
        case Family::QuaternionKahler:
            return std::pow(sn(kappa, r), 4 * dim - 4) * std::pow(sn(4.0 * kappa, r), 3);
        case Family::CustomWarped:
            return std::pow(warping->value(r), dim - 1);
    }
    return 0;
}

double RadialGeometry::drift(double r) const {
    switch (family) {
        case Family::RealSpaceForm:
            return (dim - 1) * sn_prime(kappa, r) / sn(kappa, r);
        case Family::Kahler:
            return (2 * dim - 2) * sn_prime(kappa, r) / sn(kappa, r) +
                   sn_prime(4.0 * kappa, r) / sn(4.0 * kappa, r);
        case Family::QuaternionKahler:
            return (4 * dim - 4) * sn_prime(kappa, r) / sn(kappa, r) +
                   3.0 * sn_prime(4.0 * kappa, r) / sn(4.0 * kappa, r);
        case Family::CustomWarped:
            return (dim - 1) * warping->deriv(r) / warping->value(r);
    }
    return 0;
}

double RadialGeometry::speed(double r) const {
    const int n = real_dimension();
    if (r == 0.0) return 0.0;
    return std::pow(weight(r), 1.0 / (n - 1));
}

double RadialGeometry::sphere_area() const { return unit_sphere_area(real_dimension() - 1); }

// ---- Substitution ----------------------------------------------------------

namespace {

double s_closed_form(double kappa, double r) {
    // integral of sn_kappa: (1-cos(sqrt(k) r))/k etc., series near kappa=0
    const double x = kappa * r * r;
    if (std::abs(x) < 1e-6) {
        // r^2/2 * (1 - x/12 + x^2/360)
        return 0.5 * r * r * (1.0 - x / 12.0 * (1.0 - x / 30.0));
    }
    if (kappa > 0) return (1.0 - std::cos(std::sqrt(kappa) * r)) / kappa;
    return (std::cosh(std::sqrt(-kappa) * r) - 1.0) / (-kappa);
}

}  // namespace

Substitution substitution_for(const RadialGeometry& geom) {
    geom.validate();
    const int fine = 4097;
    std::vector<double> rs(fine), ss(fine), sp(fine);
    const double h = geom.radius / (fine - 1);
    for (int i = 0; i < fine; ++i) {
        rs[i] = i * h;
        sp[i] = geom.speed(rs[i]);
    }
    if (geom.family == Family::RealSpaceForm) {
        for (int i = 0; i < fine; ++i) ss[i] = s_closed_form(geom.kappa, rs[i]);
    } else {
        // cumulative quadrature of the speed, 5-point Gauss per fine interval
        ss[0] = 0.0;
        for (int i = 1; i < fine; ++i)
            ss[i] = ss[i - 1] +
                    gauss5(rs[i - 1], rs[i], [&](double r) { return geom.speed(r); });
    }
    return Substitution{MonotoneMap(std::move(rs), std::move(ss), std::move(sp))};
}

// ---- hypothesis_check ------------------------------------------------------

HypothesisReport hypothesis_check(const WarpingFunction& warping, int dim, double kappa,
                                  CurvatureMode mode, double radius, double tol) {
    warping.validate(radius);
    const int n = 512;
    HypothesisReport rep;
    rep.margin = std::numeric_limits<double>::infinity();
    // r=0 is evaluated from the first interior node; curvatures extend
    // continuously there for admissible warpings.
    for (int i = 1; i <= n; ++i) {
        const double r = radius * i / n;
        const double f = warping.value(r);
        const double fp = warping.deriv(r);
        const double fpp = warping.deriv2(r);
        const double sect_rad = -fpp / f;                    // radial sectional curvature
        const double sect_tan = (1.0 - fp * fp) / (f * f);   // tangential sectional curvature
        double margin;
        if (mode == CurvatureMode::RicciLower) {
            const double ric_rad = (dim - 1) * sect_rad;
            const double ric_tan = sect_rad + (dim - 2) * sect_tan;
            margin = std::min(ric_rad, ric_tan) - (dim - 1) * kappa;
        } else {
            margin = kappa - std::max(sect_rad, sect_tan);
        }
        if (margin < rep.margin) {
            rep.margin = margin;
            rep.worst_r = r;
        }
    }
    rep.pass = rep.margin >= -tol;
    rep.note = (mode == CurvatureMode::RicciLower)
                   ? "warped-product Ricci: radial (m-1)(-f''/f), tangential -f''/f+(m-2)(1-f'^2)/f^2"
                   : "warped-product sectional: radial -f''/f, tangential (1-f'^2)/f^2";
    return rep;
}

}  // namespace rhk
