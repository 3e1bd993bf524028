// Command-line driver: eigenvalue runs, kernel synthesis, comparison
// scenarios, and the full verification suite, with JSON/CSV reports.

#include "CLI11.hpp"

#include "rhk/compare.hpp"
#include "rhk/heat.hpp"
#include "rhk/report.hpp"
#include "rhk/sturm.hpp"

#include <cstdlib>
#include <iostream>
#include <random>
#include <string>
#include <vector>

using namespace rhk;
using nlohmann::json;

namespace {

struct Config {
    std::string family = "real";
    int dim = 3;
    double kappa = 0.0;
    double radius = 1.0;
    double alpha = 1.0;
    bool dirichlet = false;
    int grid = 2049;
    int modes = 300;
    std::vector<double> times = {0.05, 0.2, 1.0};
    double mollifier_width = 0.0;  // 0: four grid spacings
    std::string preset;
    unsigned seed = 1;
    int sweep = 100;
    bool timestep = false;
    std::string output;
    std::string format = "json";
};

RadialGeometry build_geometry(const Config& c) {
    RadialGeometry g;
    g.family = family_from_name(c.family);
    g.dim = c.dim;
    g.kappa = c.kappa;
    g.radius = c.radius;
    g.alpha = c.dirichlet ? RobinParameter::dirichlet_limit() : RobinParameter::robin(c.alpha);
    g.validate();
    return g;
}

json config_json(const Config& c, const std::string& command) {
    json j;
    j["family"] = c.family;
    j["dim"] = c.dim;
    j["kappa"] = c.kappa;
    j["radius"] = c.radius;
    j["alpha"] = c.dirichlet ? json("dirichlet") : json(c.alpha);
    j["grid"] = c.grid;
    j["modes"] = c.modes;
    j["times"] = c.times;
    j["seed"] = c.seed;
    if (command == "compare" || command == "suite") j["preset"] = c.preset;
    return j;
}

std::string output_path(const Config& c, const std::string& fallback) {
    if (!c.output.empty()) return c.output;
    const char* dir = std::getenv("RHK_OUTPUT_DIR");
    return (dir ? std::string(dir) : std::string(".")) + "/" + fallback;
}

RadialGeometry space_form(int m, double kappa, double R, double alpha) {
    RadialGeometry g;
    g.family = Family::RealSpaceForm;
    g.dim = m;
    g.kappa = kappa;
    g.radius = R;
    g.alpha = RobinParameter::robin(alpha);
    return g;
}

int run_eigen(const Config& c) {
    if (!c.dirichlet && c.alpha < 0)
        std::cerr << "warning: negative alpha is outside the comparison regime; "
                     "the first eigenvalue will be negative\n";
    const auto g = build_geometry(c);
    const auto op = assemble(g, make_grid(c.grid, g.radius));
    const auto spec = eigensolve(op, std::min(c.modes, c.grid / 4));
    std::cout << "lambda_1 = " << spec.lambdas[0] << "\n";
    if (c.format == "csv") {
        std::string csv = "index,lambda\n";
        for (size_t i = 0; i < spec.lambdas.size(); ++i)
            csv += std::to_string(i + 1) + "," + std::to_string(spec.lambdas[i]) + "\n";
        write_atomic(output_path(c, "eigen.csv"), csv);
    } else {
        write_atomic(output_path(c, "eigen.json"),
                     envelope("eigen", config_json(c, "eigen"), eigen_json(spec)).dump(2) + "\n");
    }
    return 0;
}

int run_kernel(const Config& c) {
    const auto g = build_geometry(c);
    const auto tg = TimeGrid::of(c.times);
    HeatKernelField field;
    if (c.timestep) {
        const auto grid = make_grid(c.grid, g.radius);
        const double width =
            c.mollifier_width > 0 ? c.mollifier_width : 4.0 * grid.h();
        field = kernel_timestep(g, grid, tg, width);
    } else {
        const auto spec =
            eigensolve(assemble(g, make_grid(c.grid, g.radius)), std::min(c.modes, c.grid / 4));
        field = kernel_spectral(spec, tg);
    }
    std::cout << "H(0, t_1) = " << field.values[0][0] << "\n";
    if (c.format == "csv")
        write_atomic(output_path(c, "kernel.csv"), kernel_csv(field));
    else
        write_atomic(output_path(c, "kernel.json"),
                     envelope("kernel", config_json(c, "kernel"), kernel_json(field)).dump(2) +
                         "\n");
    return 0;
}

// ---- presets ---------------------------------------------------------------

std::vector<ComparisonReport> preset_sphere_vs_flat(int n, const TimeGrid& tg) {
    ComparisonScenario sc{"sphere-vs-flat", space_form(2, 1.0, 1.0, 1.0),
                          space_form(2, 0.0, 1.0, 1.0), Direction::LhsGeq,
                          Hypothesis::RicciLower};
    return {kernel_compare(sc, tg, n), eigen_compare(sc, n)};
}

std::vector<ComparisonReport> preset_hyperbolic_vs_flat(int n, const TimeGrid& tg) {
    ComparisonScenario sc{"hyperbolic-vs-flat", space_form(2, -1.0, 1.0, 1.0),
                          space_form(2, 0.0, 1.0, 1.0), Direction::LhsLeq,
                          Hypothesis::SectUpper};
    return {kernel_compare(sc, tg, n), eigen_compare(sc, n)};
}

ComparisonReport degeneration_report(Family fam, int m, int n, const std::string& id) {
    RadialGeometry model;
    model.family = fam;
    model.dim = m;
    model.kappa = 0.0;
    model.radius = 1.0;
    model.alpha = RobinParameter::robin(1.0);
    const auto real = space_form(model.real_dimension(), 0.0, 1.0, 1.0);
    const auto grid = make_grid(n, 1.0);
    const double lam_model = eigensolve(assemble(model, grid), 1).lambdas[0];
    const double lam_real = eigensolve(assemble(real, grid), 1).lambdas[0];
    ComparisonReport rep;
    rep.id = id;
    rep.grid_n = n;
    rep.lhs_lambda = lam_model;
    rep.rhs_lambda = lam_real;
    rep.max_violation = std::abs(lam_model - lam_real);
    rep.tolerance = 1e-6 * std::max(1.0, std::abs(lam_real));
    rep.verdict = rep.max_violation <= rep.tolerance ? Verdict::Pass : Verdict::Fail;
    rep.note = "flat model operator degenerates to the real space form";
    return rep;
}

std::vector<ComparisonReport> preset_kahler_degeneration(int n) {
    return {degeneration_report(Family::Kahler, 2, n, "kahler-degeneration"),
            degeneration_report(Family::QuaternionKahler, 2, n, "quaternion-degeneration")};
}

std::vector<ComparisonReport> preset_transplant_sweep(int n, const TimeGrid& tg, unsigned seed,
                                                      int sweep) {
    std::vector<ComparisonReport> reps;
    const auto model = space_form(3, 0.0, 1.0, 1.0);
    TransplantScenario ts;
    ts.model = model;
    ts.id = "gamma-1";
    ts.gamma.assign(n, 1.0);
    reps.push_back(transplant_check(ts, tg, n));
    reps.push_back(barta_bound(ts, n));
    for (int k = 0; k < sweep; ++k) {
        std::mt19937 rng(seed + static_cast<unsigned>(k));
        std::uniform_real_distribution<double> dist(0.3, 1.0);
        ts.id = "gamma-seed-" + std::to_string(seed + static_cast<unsigned>(k));
        for (auto& g : ts.gamma) g = dist(rng);
        reps.push_back(transplant_check(ts, tg, n));
        reps.push_back(barta_bound(ts, n));
    }
    return reps;
}

std::vector<ComparisonReport> run_preset(const std::string& preset, const Config& c) {
    const int n = std::min(c.grid, 1025);  // comparisons refine to 2n-1 internally
    const auto tg = TimeGrid::of(c.times);
    if (preset == "sphere-vs-flat") return preset_sphere_vs_flat(n, tg);
    if (preset == "hyperbolic-vs-flat") return preset_hyperbolic_vs_flat(n, tg);
    if (preset == "kahler-degeneration") return preset_kahler_degeneration(n);
    if (preset == "transplant-gamma-sweep")
        return preset_transplant_sweep(std::min(n, 513), tg, c.seed, c.sweep);
    throw std::invalid_argument("unknown preset: " + preset);
}

int emit_comparisons(const Config& c, const std::string& command,
                     const std::vector<ComparisonReport>& reps) {
    bool failed = false;
    json results = json::array();
    for (const auto& r : reps) {
        std::cout << r.id << ": " << verdict_name(r.verdict) << "\n";
        failed = failed || r.verdict == Verdict::Fail;
        results.push_back(comparison_json(r));
    }
    if (c.format == "csv")
        write_atomic(output_path(c, command + ".csv"), comparison_csv(reps));
    else
        write_atomic(output_path(c, command + ".json"),
                     envelope(command, config_json(c, command), results).dump(2) + "\n");
    return failed ? 1 : 0;
}

int run_compare(const Config& c) {
    if (!c.dirichlet && c.alpha < 0)
        throw std::invalid_argument("compare: negative alpha is not supported");
    if (c.preset.empty()) throw std::invalid_argument("compare: --preset is required");
    return emit_comparisons(c, "compare", run_preset(c.preset, c));
}

int run_suite(const Config& c) {
    if (!c.dirichlet && c.alpha < 0)
        throw std::invalid_argument("suite: negative alpha is not supported");
    std::vector<ComparisonReport> all;
    for (const std::string p : {"sphere-vs-flat", "hyperbolic-vs-flat", "kahler-degeneration",
                                "transplant-gamma-sweep"}) {
        auto reps = run_preset(p, c);
        all.insert(all.end(), reps.begin(), reps.end());
    }
    const auto probe =
        kahler_sharpness_probe(2, 0.5, 0.9, 1.0, TimeGrid::of(c.times), std::min(c.grid, 513));
    std::cout << "kahler-sharpness-probe: fraction above = " << probe.frac_kahler_above
              << ", gap range [" << probe.min_gap << ", " << probe.max_gap << "] (reported)\n";
    return emit_comparisons(c, "suite", all);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Robin eigenvalues and heat kernels of radial operators"};
    app.require_subcommand(1);
    Config c;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--family", c.family, "real|kahler|quaternion|warped");
        sub->add_option("--dim", c.dim, "dimension (real/complex/quaternionic)");
        sub->add_option("--kappa", c.kappa, "curvature parameter");
        sub->add_option("--radius", c.radius, "ball radius");
        sub->add_option("--alpha", c.alpha, "Robin parameter");
        sub->add_flag("--dirichlet", c.dirichlet, "Dirichlet boundary condition");
        sub->add_option("--grid", c.grid, "grid nodes");
        sub->add_option("--modes", c.modes, "retained modes");
        sub->add_option("--times", c.times, "time list")->delimiter(',');
        sub->add_option("--seed", c.seed, "seed for randomized sweeps");
        sub->add_option("--output", c.output, "output file path");
        sub->add_option("--format", c.format, "json|csv")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    auto* eigen = app.add_subcommand("eigen", "first Robin eigenvalues");
    add_common(eigen);
    auto* kernel = app.add_subcommand("kernel", "center-based Robin heat kernel");
    add_common(kernel);
    kernel->add_flag("--timestep", c.timestep, "use the time-stepping solver");
    kernel->add_option("--mollifier-width", c.mollifier_width,
                       "delta mollification width (default: 4 grid spacings)");
    auto* compare = app.add_subcommand("compare", "comparison scenarios");
    add_common(compare);
    compare->add_option("--preset", c.preset,
                        "sphere-vs-flat|hyperbolic-vs-flat|kahler-degeneration|"
                        "transplant-gamma-sweep");
    compare->add_option("--sweep", c.sweep, "random gamma draws in the transplant sweep");
    auto* suite = app.add_subcommand("suite", "full verification battery");
    add_common(suite);
    suite->add_option("--sweep", c.sweep, "random gamma draws in the transplant sweep");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(eigen)) return run_eigen(c);
        if (app.got_subcommand(kernel)) return run_kernel(c);
        if (app.got_subcommand(compare)) return run_compare(c);
        if (app.got_subcommand(suite)) return run_suite(c);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
