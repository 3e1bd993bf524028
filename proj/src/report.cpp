#include "rhk/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rhk {

using nlohmann::json;

json geometry_json(const RadialGeometry& g) {
    json j;
    j["family"] = family_name(g.family);
    j["dim"] = g.dim;
    j["kappa"] = g.kappa;
    j["radius"] = g.radius;
    if (g.alpha.dirichlet)
        j["alpha"] = "dirichlet";
    else
        j["alpha"] = g.alpha.value;
    return j;
}

json eigen_json(const SpectralData& spec) {
    json j;
    j["geometry"] = geometry_json(spec.geom);
    j["grid_n"] = spec.grid.n;
    j["lambdas"] = spec.lambdas;
    return j;
}

json kernel_json(const HeatKernelField& field) {
    json j;
    j["geometry"] = geometry_json(field.geom);
    j["grid_n"] = field.rgrid.n;
    j["provenance"] = field.provenance == Provenance::Spectral ? "spectral" : "time-stepped";
    j["times"] = field.tgrid.times;
    j["values"] = field.values;
    if (!field.tail.empty()) j["tail_bound"] = field.tail;
    if (field.provenance == Provenance::TimeStepped) {
        j["mollifier_bias"] = field.mollifier_bias;
        j["mass_identity_residual"] = field.mass_identity_residual;
    }
    return j;
}

json comparison_json(const ComparisonReport& rep) {
    json j;
    j["id"] = rep.id;
    j["verdict"] = verdict_name(rep.verdict);
    j["hypothesis_margin"] = rep.hypothesis_margin;
    j["max_violation"] = rep.max_violation;
    j["tolerance"] = rep.tolerance;
    j["grid_n"] = rep.grid_n;
    j["note"] = rep.note;
    if (rep.lhs_lambda != 0 || rep.rhs_lambda != 0) {
        j["lhs_lambda"] = rep.lhs_lambda;
        j["rhs_lambda"] = rep.rhs_lambda;
    }
    if (rep.log_slope_gap != 0) j["log_slope_gap"] = rep.log_slope_gap;
    if (rep.certified_bound != 0) j["certified_bound"] = rep.certified_bound;
    return j;
}

json envelope(const std::string& command, json config, json result) {
    json j;
    j["schema"] = 1;
    j["command"] = command;
    j["config"] = std::move(config);
    j["result"] = std::move(result);
    return j;
}

std::string kernel_csv(const HeatKernelField& field) {
    std::ostringstream out;
    out.precision(12);
    out << "r,t,H\n";
    for (int k = 0; k < field.tgrid.size(); ++k)
        for (int j = 0; j < field.rgrid.n; ++j)
            out << field.rgrid.node(j) << ',' << field.tgrid.times[k] << ','
                << field.values[k][j] << '\n';
    return out.str();
}

std::string comparison_csv(const std::vector<ComparisonReport>& reps) {
    std::ostringstream out;
    out.precision(12);
    out << "id,verdict,hypothesis_margin,max_violation,tolerance\n";
    for (const auto& r : reps)
        out << r.id << ',' << verdict_name(r.verdict) << ',' << r.hypothesis_margin << ','
            << r.max_violation << ',' << r.tolerance << '\n';
    return out.str();
}

void write_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("write_atomic: cannot open " + tmp);
        out << content;
        if (!out.flush()) throw std::runtime_error("write_atomic: write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("write_atomic: rename failed for " + path);
    }
}

}  // namespace rhk
