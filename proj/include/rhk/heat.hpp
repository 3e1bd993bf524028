#pragma once

// Center-based Robin heat kernels on a RadialGeometry: spectral synthesis
// from the Sturm-Liouville modes, an independent Crank-Nicolson
// time-stepper, and the substituted-variable sign diagnostics.

#include "rhk/geometry.hpp"
#include "rhk/sturm.hpp"

#include <vector>

namespace rhk {

struct TimeGrid {
    std::vector<double> times;  // strictly increasing, all > 0

    static TimeGrid of(std::vector<double> t);  // validates
    int size() const { return static_cast<int>(times.size()); }
};

enum class Provenance { Spectral, TimeStepped };

struct HeatKernelField {
    RadialGeometry geom;
    Grid rgrid;
    TimeGrid tgrid;
    Provenance provenance = Provenance::Spectral;
    std::vector<std::vector<double>> values;  // values[k][j] = H(r_j, t_k)
    std::vector<double> tail;                 // spectral truncation bound per t
    double omega = 0;                         // sphere-area normalization
    std::vector<double> cell_mass;            // mu_j, for the mass functional
    double mollifier_bias = 0;                // effective start time of the mollified delta
    double mass_identity_residual = 0;        // worst per-step defect of the decay law

    // total mass of the slice: omega * sum mu_j H(r_j, t_k)
    double mass(int k) const;
};

// Smallest t at which the truncation tail drops below 1e-6 * H(0,t);
// spectral synthesis is rejected below it.
double spectral_t_min(const SpectralData& spec);

HeatKernelField kernel_spectral(const SpectralData& spec, const TimeGrid& tgrid);

// Crank-Nicolson evolution of a Gaussian mollification of the centered
// delta (width sigma = mollifier_width, in length units, >= 3 grid
// spacings). Second order in the time step; the per-step discrete mass
// decay identity is recorded in mass_identity_residual.
HeatKernelField kernel_timestep(const RadialGeometry& geom, const Grid& grid,
                                const TimeGrid& tgrid, double mollifier_width);

struct SubstitutedKernel {
    std::vector<double> sgrid;                          // uniform in s
    std::vector<std::vector<double>> phi, dphi, d2phi;  // [time][node]
    bool gate_met = false;  // kappa > 0: R <= arctan(alpha/sqrt k)/sqrt k

    std::vector<CheckResult> slope;              // phi' < 0 for s < s(R)
    std::vector<CheckResult> convexity;          // phi'' > 0 for 0 <= s < s(R)
    std::vector<CheckResult> boundary_identity;  // third-order identity at s = s(R)
    std::vector<double> d2phi0_formula;          // spectral value of phi''(0,t)
    std::vector<double> d2phi0_fd;               // finite-difference value
};

// Re-expresses the kernel in the s variable on a uniform grid and runs
// the sign checks; requires a space-form geometry. spec supplies the
// eigendata for the phi''(0,t) cross-check.
SubstitutedKernel substituted_diagnostics(const HeatKernelField& field, const SpectralData& spec,
                                          const Substitution& sub);

}  // namespace rhk
