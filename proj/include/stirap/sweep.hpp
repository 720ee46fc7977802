// Single runs, parameter sweeps, validation, and their file outputs.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "stirap/config.hpp"
#include "stirap/oracle.hpp"
#include "stirap/propagator.hpp"

namespace stirap {

// Shortest text that parses back to at most 17 significant digits.
std::string format_double(double v);

void write_timeseries_csv(const std::string& path, const TimeSeries& ts);
nlohmann::json diagnostics_json(const Diagnostics& d);

struct RunRecord {
    nlohmann::json config;  // complete snapshot
    double axis_value = 0.0;
    TimeSeries series;
    double wall_seconds = 0.0;
    bool ok = false;
    std::string error;
    double error_time = 0.0;  // meaningful for propagation failures
};

// Propagates one configuration; never throws on propagation failure.
RunRecord execute(const RunConfig& cfg);

// Writes timeseries_0000.csv and diagnostics.json into out_dir.
RunRecord run_simulate(const RunConfig& cfg, const std::string& out_dir);

struct ExponentialFit {
    double decay_constant = 0.0;  // k in y - asymptote ~ A exp(-k x)
    double amplitude = 0.0;
    double r_squared = 0.0;
    int points = 0;
    bool ok = false;
};

// Least squares of log(y - asymptote) against x over the strictly
// decreasing prefix of y (stopping where y - asymptote is no longer positive).
ExponentialFit fit_exponential(const std::vector<double>& x, const std::vector<double>& y, double asymptote);

struct SweepResult {
    std::vector<RunRecord> runs;  // in axis order
    int failures = 0;
    nlohmann::json summary;
};

// Runs every axis value on `workers` threads (0 = hardware concurrency).
SweepResult run_sweep(const SweepSpec& spec, int workers = 0);

// run_sweep plus finals.csv, diagnostics.json and optional timeseries_NNNN.csv.
SweepResult run_sweep(const SweepSpec& spec, const std::string& out_dir, int workers = 0);

struct ValidateOptions {
    GeneratorKind generator = GeneratorKind::oracle;
    bool double_freq = false;
    double gamma = 0.0;  // flat rate for the closed-system cross-check
    double dt_max = std::numeric_limits<double>::infinity();
    int stride = 0;
    std::string known_path;  // empty = committed list
};

struct ValidationResult {
    bool ok = false;
    std::string first_failure;
    nlohmann::json report;
};

ValidationResult run_validate(const ValidateOptions& opt);
ValidationResult run_validate(const ValidateOptions& opt, const std::string& out_dir);

} // namespace stirap
