// Fixed-step RK4 propagation of the adiabatic density matrix.

#pragma once

#include <array>
#include <limits>
#include <string_view>
#include <vector>

#include "stirap/liouville.hpp"
#include "stirap/pulses.hpp"
#include "stirap/rates.hpp"

namespace stirap {

enum class GeneratorKind { analytic, oracle };

std::string_view to_string(GeneratorKind g);
GeneratorKind generator_from_string(std::string_view name);

struct PropagationOptions {
    double dt_max = std::numeric_limits<double>::infinity();  // step is min(dt_max, sigma / 200)
    int stride = 0;  // steps between samples; 0 picks about 200 samples
    GeneratorKind generator = GeneratorKind::oracle;
    bool double_freq = false;
    double drive_fraction = 0.1;  // adiabaticity is scanned where Omega >= drive_fraction * omega0
    double adiabatic_threshold = 0.1;
    double trace_tolerance = 1e-6;
    double population_floor = -1e-4;
};

struct Diagnostics {
    double dt = 0.0;
    long steps = 0;
    double max_trace_drift = 0.0;
    double max_hermiticity_defect = 0.0;
    double min_population = 1.0;
    double max_adiabaticity_ratio = 0.0;
    double max_adiabaticity_time = 0.0;
    bool adiabaticity_flag = false;
};

struct TimeSeries {
    std::vector<double> times;
    std::vector<std::array<double, 3>> bare_pops;   // rho00, rho11, rho22
    std::vector<std::array<cplx, 3>> bare_cohs;     // rho01, rho12, rho02
    std::vector<std::array<double, 3>> adiabatic_pops;  // rho++, rho00, rho--
    Diagnostics diagnostics;
    LiouvilleVector final_state = LiouvilleVector::Zero();
    Eigen::Matrix3cd final_bare = Eigen::Matrix3cd::Zero();

    void record(double t, const Eigen::Matrix3cd& bare, const LiouvilleVector& v);
};

// Spectral-density multiplier at frame f (1 unless pulse-scaled coupling is on).
double coupling_scale(const FrameState& f, const PulseConfig& pulse, const SystemConfig& sys);

// Generator selected by `opt` at a given frame.
Generator generator_at(const FrameState& f, const PulseConfig& pulse, const SystemConfig& sys,
                       const PropagationOptions& opt);

// Adds a second -i w_jk to every coherence diagonal.
void add_frequency_doubling(Generator& m, const FrameState& f);

// Integrates from t_start to t_end. Throws PropagationError on trace drift
// beyond tolerance or a population below the floor.
TimeSeries propagate(const PulseConfig& pulse, const SystemConfig& sys, const LiouvilleVector& rho0,
                     const PropagationOptions& opt = {});

// Starts from the adiabatic image of |0><0| at t_start.
TimeSeries propagate(const PulseConfig& pulse, const SystemConfig& sys, const PropagationOptions& opt = {});

// Step count and step size covering the window.
std::pair<long, double> step_plan(const PulseConfig& pulse, double dt_max);

// Trace-one kernel vector of a frozen generator.
LiouvilleVector steady_state(const Generator& m);

} // namespace stirap
