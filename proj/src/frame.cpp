#include "stirap/frame.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "stirap/errors.hpp"

namespace stirap {

MixingAngles mixing_angles(double pump, double stokes, double delta, double floor) {
    if (!std::isfinite(pump) || !std::isfinite(stokes) || !std::isfinite(delta))
        throw std::invalid_argument("mixing_angles: non-finite input");
    if (pump < 0 || stokes < 0) throw std::invalid_argument("mixing_angles: negative Rabi frequency");
    if (pump <= floor && stokes <= floor)
        throw DegenerateDrive("both envelopes at the floor; mixing angle undefined");
    return {std::atan2(pump, stokes), 0.5 * std::atan2(std::hypot(pump, stokes), delta)};
}

AngleRates angle_rates(const Envelope& e, double delta) {
    const double o2 = e.pump * e.pump + e.stokes * e.stokes;
    if (o2 == 0.0) throw DegenerateDrive("angle_rates: zero drive");
    const double o = std::sqrt(o2);
    AngleRates r;
    r.theta_dot = (e.pump_dot * e.stokes - e.stokes_dot * e.pump) / o2;
    r.phi_dot = 0.5 * (delta / o) * (e.pump_dot * e.pump + e.stokes_dot * e.stokes) / (delta * delta + o2);
    return r;
}

AngleRates angle_rates(const PulseConfig& cfg, double t, double delta) {
    const Envelope e = envelope(t, cfg);
    if (e.pump <= cfg.floor() && e.stokes <= cfg.floor())
        throw DegenerateDrive("angle_rates: both envelopes at the floor");
    return angle_rates(e, delta);
}

Eigenvalues eigenvalues(double omega, double delta) {
    if (!std::isfinite(omega) || !std::isfinite(delta)) throw std::invalid_argument("eigenvalues: non-finite input");
    if (omega < 0) throw std::invalid_argument("eigenvalues: negative Rabi frequency");
    const double r = std::hypot(delta, omega);
    Eigenvalues ev;
    if (delta >= 0) {
        ev.plus = 0.5 * (delta + r);
        ev.minus = ev.plus > 0 ? -omega * omega / (4.0 * ev.plus) : 0.0;
    } else {
        ev.minus = 0.5 * (delta - r);
        ev.plus = -omega * omega / (4.0 * ev.minus);
    }
    return ev;
}

Eigen::Matrix3cd basis_matrix(double theta, double phi) {
    const double st = std::sin(theta), ct = std::cos(theta);
    const double sp = std::sin(phi), cp = std::cos(phi);
    Eigen::Matrix3d b;
    b << st * sp, ct, st * cp,
         cp, 0.0, -sp,
         ct * sp, -st, ct * cp;
    return b.cast<std::complex<double>>();
}

Eigen::Matrix3d bare_hamiltonian(double pump, double stokes, double delta) {
    Eigen::Matrix3d h;
    h << 0.0, pump, 0.0,
         pump, 2.0 * delta, stokes,
         0.0, stokes, 0.0;
    return 0.5 * h;
}

Eigen::Matrix3cd nonadiabatic_hamiltonian(const FrameState& f) {
    using namespace std::complex_literals;
    const double sp = std::sin(f.phi), cp = std::cos(f.phi);
    Eigen::Matrix3cd h;
    h << f.omega_plus, 1i * f.theta_dot * sp, 1i * f.phi_dot,
         -1i * f.theta_dot * sp, 0.0, -1i * f.theta_dot * cp,
         -1i * f.phi_dot, 1i * f.theta_dot * cp, f.omega_minus;
    return h;
}

AdiabaticityRatios adiabaticity_margin(const FrameState& f) {
    auto ratio = [](double coupling, double gap) {
        if (coupling == 0.0) return 0.0;
        if (gap == 0.0) return std::numeric_limits<double>::infinity();
        return coupling / gap;
    };
    return {ratio(std::abs(f.theta_dot * std::sin(f.phi)), std::abs(f.omega_plus - f.omega_zero)),
            ratio(std::abs(f.theta_dot * std::cos(f.phi)), std::abs(f.omega_minus - f.omega_zero))};
}

FrameState frame_at(const PulseConfig& cfg, double delta, double t, std::optional<double> held_theta) {
    const Envelope e = envelope(t, cfg);
    FrameState f;
    f.t = t;
    f.pump = e.pump;
    f.stokes = e.stokes;
    f.omega = e.total();
    f.delta = delta;
    f.phi = 0.5 * std::atan2(f.omega, delta);
    const AngleRates r = angle_rates(e, delta);
    f.phi_dot = r.phi_dot;
    if (e.pump <= cfg.floor() && e.stokes <= cfg.floor()) {
        f.theta = held_theta.value_or(0.0);
        f.theta_dot = 0.0;
        f.held = true;
    } else {
        f.theta = std::atan2(e.pump, e.stokes);
        f.theta_dot = r.theta_dot;
    }
    const Eigenvalues ev = eigenvalues(f.omega, delta);
    f.omega_plus = ev.plus;
    f.omega_minus = ev.minus;
    f.basis = basis_matrix(f.theta, f.phi);
    return f;
}

FrameState frame_from_angles(double theta, double phi, double theta_dot, double phi_dot, double omega) {
    FrameState f;
    f.theta = theta;
    f.phi = phi;
    f.theta_dot = theta_dot;
    f.phi_dot = phi_dot;
    f.omega = omega;
    f.pump = omega * std::sin(theta);
    f.stokes = omega * std::cos(theta);
    f.delta = omega / std::tan(2.0 * phi);
    f.omega_plus = 0.5 * omega / std::tan(phi);
    f.omega_minus = -0.5 * omega * std::tan(phi);
    f.basis = basis_matrix(theta, phi);
    return f;
}

} // namespace stirap
