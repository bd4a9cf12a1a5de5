#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sqi/detection.hpp"

// Canonical preset experiments, one per detector layout plus the two-slit
// and spin-splitter variants. Each run returns a structured report with
// exact probability tables, sampled counts where sampling applies, fringe
// tables where a phase is swept, and named invariant checks whose combined
// verdict drives the CLI exit code.

namespace sqi {

struct InvariantCheck {
    std::string name;
    bool pass = false;
    double residual = 0.0; // how far the constraint was exceeded
    double tolerance = 0.0;
};

struct ScenarioReport {
    std::string scenario;
    std::uint64_t seed = 0;
    std::map<std::string, double> params;           // resolved numeric params
    std::map<std::string, std::string> text_params; // resolved choice params
    // Named probability tables; every table sums to 1 within 1e-10.
    std::map<std::string, std::map<std::string, double>> tables;
    std::vector<std::pair<double, double>> fringe; // (phase, probability)
    std::map<std::string, std::uint64_t> counts;   // sampled outcome counts
    std::vector<InvariantCheck> checks;

    bool all_pass() const;
};

struct ParamSpec {
    std::string name;
    std::string kind; // "double" | "int" | "choice"
    double default_value = 0.0;
    double min_value = 0.0;
    double max_value = 0.0;
    std::string default_text;          // choice params
    std::vector<std::string> choices;  // choice params
    std::string description;
};

struct ScenarioInfo {
    std::string name;
    std::string description;
    std::vector<ParamSpec> params;
};

/// The five presets in stable order: mach_zehnder_a, coincidence_b,
/// serial_c, two_slit, stern_gerlach.
const std::vector<ScenarioInfo>& list_scenarios();

/// Parameter overrides; anything not supplied takes the schema default.
/// Unknown names and out-of-range values raise InvalidParams.
struct ScenarioParams {
    std::map<std::string, double> values;
    std::map<std::string, std::string> text;
};

ScenarioReport run_scenario(const std::string& name,
                            const ScenarioParams& params, std::uint64_t seed,
                            const Tolerances& tol = default_tolerances());

} // namespace sqi
