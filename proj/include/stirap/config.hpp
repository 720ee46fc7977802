// Run and sweep configuration: sectioned key-value text or JSON.
//
// Text form:
//
//   [pulse]
//   protocol = fstirap
//   omega0 = 20
//   [system]
//   gamma_flat = 0.01
//   [run]
//   generator = oracle
//   [sweep]
//   axis = gamma_flat
//   start = 0
//   stop = 0.2
//   count = 101
//
// '#' and ';' start comments. Lists are comma separated. The JSON form uses
// the same sections as top-level objects.

#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "stirap/propagator.hpp"
#include "stirap/pulses.hpp"
#include "stirap/rates.hpp"

namespace stirap {

struct Document {
    nlohmann::json root = nlohmann::json::object();
    std::map<std::string, int> lines;  // "section.key" -> 1-based line (text form only)

    int line_of(const std::string& section, const std::string& key) const;
};

Document parse_text(const std::string& text);
Document parse_json(const std::string& text);
// Picks JSON when the first non-blank character is '{'.
Document parse_document(const std::string& text);
Document load_document(const std::string& path);

struct RunConfig {
    PulseConfig pulse;
    SystemConfig system;
    PropagationOptions options;
};

enum class SweepAxis { gamma_flat, coupling_sq, n_bar };

std::string_view to_string(SweepAxis a);
SweepAxis sweep_axis_from_string(std::string_view name);

struct Observables {
    bool bare_pops = true;
    bool bare_cohs = true;
    bool adiabatic_pops = true;
    bool finals_only = false;  // suppress per-run time series files
};

struct SweepSpec {
    SweepAxis axis = SweepAxis::gamma_flat;
    std::vector<double> values;
    RunConfig base;
    Observables observables;

    // Base configuration with the axis parameter set to values[i].
    RunConfig run_at(std::size_t i) const;
};

// Throws ConfigError naming the section.key and its line when known.
RunConfig run_config_from(const Document& doc);
SweepSpec sweep_spec_from(const Document& doc);

void validate(const SweepSpec& spec);

// Complete snapshot; feeding it back through run_config_from reproduces the run.
nlohmann::json to_json(const RunConfig& cfg);

} // namespace stirap
