// Gaussian Rabi envelopes for STIRAP and fractional STIRAP.

#pragma once

#include <numbers>
#include <string>
#include <string_view>

namespace stirap {

enum class Protocol { stirap, fstirap };

std::string_view to_string(Protocol p);
Protocol protocol_from_string(std::string_view name);

// Envelopes never drop below this value (in units of 1/sigma). Keeps the
// mixing-angle rates finite where both pulses have vanished.
inline constexpr double kEnvelopeFloor = 1e-12;

// All times share the unit of `sigma`; the defaults take sigma = 1.
struct PulseConfig {
    Protocol protocol = Protocol::stirap;
    double omega0 = 20.0;             // peak Rabi frequency
    double sigma = 1.0;               // Gaussian width
    double delay = 2.0;               // Stokes-to-pump centre separation; see default_delay
    double alpha = std::numbers::pi / 4;  // final mixing angle, FSTIRAP only
    double t_start = -6.0;
    double t_end = 6.0;

    double center() const { return 0.5 * (t_start + t_end); }
    double floor() const { return kEnvelopeFloor / sigma; }
};

// 2 sigma for STIRAP; 2.5 sigma for FSTIRAP, whose late-time amplitude ratio
// must settle to tan(alpha) inside the window.
double default_delay(Protocol p, double sigma = 1.0);

// Defaults for the given protocol.
PulseConfig make_pulse(Protocol p);

// Throws ConfigError naming the first violated field.
void validate(const PulseConfig& cfg);

// Rabi frequencies and their analytic time derivatives.
struct Envelope {
    double pump = 0.0;
    double stokes = 0.0;
    double pump_dot = 0.0;
    double stokes_dot = 0.0;

    double total() const;  // sqrt(pump^2 + stokes^2)
};

// Stokes precedes pump (counter-intuitive ordering). For FSTIRAP the Stokes
// pulse carries a cos(alpha) copy of the pump shape so both vanish together
// with tan(theta) -> tan(alpha). Values below the floor are clamped to it,
// with zero derivative.
Envelope envelope(double t, const PulseConfig& cfg);

} // namespace stirap
