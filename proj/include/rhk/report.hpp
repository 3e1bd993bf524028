#pragma once

// Serialization of results: versioned JSON envelopes and plot-ready CSV,
// plus atomic file writes so partially written reports never land on disk.

#include "rhk/compare.hpp"
#include "rhk/heat.hpp"
#include "rhk/sturm.hpp"

#include "json.hpp"

#include <string>

namespace rhk {

nlohmann::json geometry_json(const RadialGeometry& g);
nlohmann::json eigen_json(const SpectralData& spec);
nlohmann::json kernel_json(const HeatKernelField& field);
nlohmann::json comparison_json(const ComparisonReport& rep);

// {"schema": 1, "command": ..., "config": ..., "result": ...}
nlohmann::json envelope(const std::string& command, nlohmann::json config,
                        nlohmann::json result);

// columns r, t, H
std::string kernel_csv(const HeatKernelField& field);
// flat summary: id, verdict, hypothesis_margin, max_violation, tolerance
std::string comparison_csv(const std::vector<ComparisonReport>& reps);

// write to a temp file in the same directory, then rename into place
void write_atomic(const std::string& path, const std::string& content);

}  // namespace rhk
