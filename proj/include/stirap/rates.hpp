// One-phonon decay rates in the adiabatic basis.

#pragma once

#include <array>
#include <string_view>

#include <Eigen/Dense>

#include "stirap/frame.hpp"

namespace stirap {

// flat: J = gamma_flat. spectral: J = coupling_sq * omega_scale.
enum class BathMode { flat, spectral };

std::string_view to_string(BathMode m);
BathMode bath_mode_from_string(std::string_view name);

struct SystemConfig {
    double delta = 1.0;        // single-photon detuning
    double gamma_flat = 0.0;   // flat spectral density
    double n_bar = 0.0;        // bath occupation
    double coupling_sq = 0.0;  // (lambda / omega_ph)^2
    double omega_scale = 1.0;  // spectral weight per unit coupling_sq
    BathMode bath = BathMode::flat;
    double omega_a = -1000.0;  // transition offsets, both below zero
    double omega_b = -1000.0;
    bool pulse_scaled_coupling = false;  // multiply J by (Omega(t) / Omega0)^2

    double gamma_eff() const;
};

void validate(const SystemConfig& cfg);

enum class Branch { a, b };

double branch_offset(Branch br, const SystemConfig& cfg);

// Constant occupation n_bar at every frequency.
double occupation(double omega, const SystemConfig& cfg);

// Emission: J (1 + N) where omega - omega_j > 0, else 0.
double gamma_pp(double omega, Branch br, const SystemConfig& cfg, double scale = 1.0);
// Absorption: J N where omega + omega_j < 0, else 0.
double gamma_mm(double omega, Branch br, const SystemConfig& cfg, double scale = 1.0);

// Index order for the adiabatic levels.
enum Level : int { kPlus = 0, kZero = 1, kMinus = 2 };

struct RateBundle {
    std::array<double, 7> gamma{};  // gamma1 .. gamma7 at index 0 .. 6
    std::array<double, 3> energy{};  // w+, w0, w-
    // Off-diagonal: -i w_jk + damping. Diagonal: population decay, stored <= 0.
    Eigen::Matrix3cd big_gamma = Eigen::Matrix3cd::Zero();

    double bohr(int j, int k) const { return energy[j] - energy[k]; }
    double g(int i) const { return gamma[i - 1]; }  // 1-based access
};

// The seven condensed rates and the relaxation matrix at one frame.
// `scale` multiplies the spectral density (pulse-scaled coupling).
RateBundle condensed_rates(const FrameState& f, const SystemConfig& cfg, double scale = 1.0);

} // namespace stirap
