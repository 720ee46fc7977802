// Instantaneous eigen-system of the driven Lambda Hamiltonian.

#pragma once

#include <optional>

#include <Eigen/Dense>

#include "stirap/pulses.hpp"

namespace stirap {

struct MixingAngles {
    double theta = 0.0;
    double phi = 0.0;
};

struct AngleRates {
    double theta_dot = 0.0;
    double phi_dot = 0.0;
};

struct Eigenvalues {
    double plus = 0.0;
    double zero = 0.0;
    double minus = 0.0;
};

struct AdiabaticityRatios {
    double plus = 0.0;   // |theta_dot sin(phi)| / |omega_plus|
    double minus = 0.0;  // |theta_dot cos(phi)| / |omega_minus|

    double max() const { return plus > minus ? plus : minus; }
};

struct FrameState {
    double t = 0.0;
    double pump = 0.0;
    double stokes = 0.0;
    double omega = 0.0;  // sqrt(pump^2 + stokes^2)
    double delta = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    double theta_dot = 0.0;
    double phi_dot = 0.0;
    double omega_plus = 0.0;
    double omega_zero = 0.0;
    double omega_minus = 0.0;
    bool held = false;  // theta carried over because the drive was degenerate
    Eigen::Matrix3cd basis = Eigen::Matrix3cd::Identity();  // columns a+, a0, a-
};

// theta = atan2(pump, stokes), phi = atan2(omega, delta) / 2. Throws
// DegenerateDrive when both inputs are at or below `floor`.
MixingAngles mixing_angles(double pump, double stokes, double delta, double floor = kEnvelopeFloor);

AngleRates angle_rates(const Envelope& env, double delta);
AngleRates angle_rates(const PulseConfig& cfg, double t, double delta);

// (delta +- sqrt(delta^2 + omega^2)) / 2, evaluated without cancellation.
Eigenvalues eigenvalues(double omega, double delta);

// Columns |a+>, |a0>, |a-> in the bare basis {|0>, |1>, |2>}.
Eigen::Matrix3cd basis_matrix(double theta, double phi);

// H = 1/2 [[0, pump, 0], [pump, 2 delta, stokes], [0, stokes, 0]].
Eigen::Matrix3d bare_hamiltonian(double pump, double stokes, double delta);

// diag(w+, 0, w-) - i B^dag dB/dt in the order (+, 0, -). Hermitian.
Eigen::Matrix3cd nonadiabatic_hamiltonian(const FrameState& f);

// Infinite when the relevant gap closes while the coupling is nonzero.
AdiabaticityRatios adiabaticity_margin(const FrameState& f);

// Full frame at time t. When the drive is degenerate, theta falls back to
// `held_theta` (or 0 if absent) with theta_dot = 0.
FrameState frame_at(const PulseConfig& cfg, double delta, double t,
                    std::optional<double> held_theta = std::nullopt);

// Synthetic frame from angles and rates, with delta = omega cot(2 phi).
FrameState frame_from_angles(double theta, double phi, double theta_dot, double phi_dot,
                             double omega);

} // namespace stirap
