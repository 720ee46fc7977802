#include "stirap/pulses.hpp"

#include <cctype>
#include <cmath>

#include "stirap/errors.hpp"

namespace stirap {

std::string_view to_string(Protocol p) {
    return p == Protocol::stirap ? "stirap" : "fstirap";
}

Protocol protocol_from_string(std::string_view name) {
    std::string lower(name);
    for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "stirap") return Protocol::stirap;
    if (lower == "fstirap") return Protocol::fstirap;
    throw ConfigError("protocol", "expected 'stirap' or 'fstirap', got '" + std::string(name) + "'");
}

double default_delay(Protocol p, double sigma) {
    return (p == Protocol::stirap ? 2.0 : 2.5) * sigma;
}

PulseConfig make_pulse(Protocol p) {
    PulseConfig cfg;
    cfg.protocol = p;
    cfg.delay = default_delay(p, cfg.sigma);
    return cfg;
}

void validate(const PulseConfig& cfg) {
    auto finite = [](const char* field, double v) {
        if (!std::isfinite(v)) throw ConfigError(field, "must be finite");
    };
    finite("omega0", cfg.omega0);
    finite("sigma", cfg.sigma);
    finite("delay", cfg.delay);
    finite("alpha", cfg.alpha);
    finite("t_start", cfg.t_start);
    finite("t_end", cfg.t_end);
    if (cfg.omega0 <= 0) throw ConfigError("omega0", "must be > 0");
    if (cfg.sigma <= 0) throw ConfigError("sigma", "must be > 0");
    if (cfg.delay <= 0) throw ConfigError("delay", "must be > 0");
    if (cfg.alpha < 0 || cfg.alpha > std::numbers::pi / 2)
        throw ConfigError("alpha", "must lie in [0, pi/2]");
    if (!(cfg.t_start < cfg.t_end)) throw ConfigError("t_end", "must be greater than t_start");
}

double Envelope::total() const { return std::hypot(pump, stokes); }

namespace {

struct Gaussian {
    double value;
    double derivative;
};

Gaussian gaussian(double t, double centre, double sigma) {
    const double x = (t - centre) / sigma;
    const double g = std::exp(-0.5 * x * x);
    return {g, -x / sigma * g};
}

} // namespace

Envelope envelope(double t, const PulseConfig& cfg) {
    if (!std::isfinite(t)) throw std::invalid_argument("envelope: time must be finite");
    validate(cfg);

    const double tc = cfg.center();
    const Gaussian stokes = gaussian(t, tc - 0.5 * cfg.delay, cfg.sigma);
    const Gaussian pump = gaussian(t, tc + 0.5 * cfg.delay, cfg.sigma);

    Envelope e;
    if (cfg.protocol == Protocol::stirap) {
        e.pump = cfg.omega0 * pump.value;
        e.pump_dot = cfg.omega0 * pump.derivative;
        e.stokes = cfg.omega0 * stokes.value;
        e.stokes_dot = cfg.omega0 * stokes.derivative;
    } else {
        const double s = std::sin(cfg.alpha);
        const double c = std::cos(cfg.alpha);
        e.pump = cfg.omega0 * s * pump.value;
        e.pump_dot = cfg.omega0 * s * pump.derivative;
        e.stokes = cfg.omega0 * (stokes.value + c * pump.value);
        e.stokes_dot = cfg.omega0 * (stokes.derivative + c * pump.derivative);
    }

    const double floor = cfg.floor();
    if (e.pump < floor) {
        e.pump = floor;
        e.pump_dot = 0.0;
    }
    if (e.stokes < floor) {
        e.stokes = floor;
        e.stokes_dot = 0.0;
    }
    return e;
}

} // namespace stirap
