#include "stirap/rates.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "stirap/errors.hpp"

namespace stirap {

std::string_view to_string(BathMode m) { return m == BathMode::flat ? "flat" : "spectral"; }

BathMode bath_mode_from_string(std::string_view name) {
    std::string lower(name);
    for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "flat") return BathMode::flat;
    if (lower == "spectral") return BathMode::spectral;
    throw ConfigError("bath", "expected 'flat' or 'spectral', got '" + std::string(name) + "'");
}

double SystemConfig::gamma_eff() const {
    return bath == BathMode::flat ? gamma_flat : coupling_sq * omega_scale;
}

void validate(const SystemConfig& cfg) {
    auto finite = [](const char* field, double v) {
        if (!std::isfinite(v)) throw ConfigError(field, "must be finite");
    };
    finite("delta", cfg.delta);
    finite("gamma_flat", cfg.gamma_flat);
    finite("n_bar", cfg.n_bar);
    finite("coupling_sq", cfg.coupling_sq);
    finite("omega_scale", cfg.omega_scale);
    finite("omega_a", cfg.omega_a);
    finite("omega_b", cfg.omega_b);
    if (cfg.gamma_flat < 0) throw ConfigError("gamma_flat", "must be >= 0");
    if (cfg.n_bar < 0) throw ConfigError("n_bar", "must be >= 0");
    if (cfg.coupling_sq < 0) throw ConfigError("coupling_sq", "must be >= 0");
    if (cfg.omega_scale < 0) throw ConfigError("omega_scale", "must be >= 0");
    if (cfg.omega_a >= 0) throw ConfigError("omega_a", "must be < 0");
    if (cfg.omega_b >= 0) throw ConfigError("omega_b", "must be < 0");
}

double branch_offset(Branch br, const SystemConfig& cfg) {
    return br == Branch::a ? cfg.omega_a : cfg.omega_b;
}

double occupation(double omega, const SystemConfig& cfg) {
    if (!std::isfinite(omega)) throw std::invalid_argument("occupation: non-finite frequency");
    return cfg.n_bar;
}

double gamma_pp(double omega, Branch br, const SystemConfig& cfg, double scale) {
    const double w = omega - branch_offset(br, cfg);
    if (!(w > 0)) return 0.0;
    return scale * cfg.gamma_eff() * (1.0 + occupation(w, cfg));
}

double gamma_mm(double omega, Branch br, const SystemConfig& cfg, double scale) {
    const double w = omega + branch_offset(br, cfg);
    if (!(w < 0)) return 0.0;
    return scale * cfg.gamma_eff() * occupation(-w, cfg);
}

RateBundle condensed_rates(const FrameState& f, const SystemConfig& cfg, double scale) {
    RateBundle rb;
    rb.energy = {f.omega_plus, f.omega_zero, f.omega_minus};

    const double s2t = std::pow(std::sin(f.theta), 2), c2t = std::pow(std::cos(f.theta), 2);
    const double s2p = std::pow(std::sin(f.phi), 2), c2p = std::pow(std::cos(f.phi), 2);
    const double w_p0 = rb.bohr(kPlus, kZero);
    const double w_m0 = rb.bohr(kMinus, kZero);
    const double w_pm = rb.bohr(kPlus, kMinus);
    const double w_mp = rb.bohr(kMinus, kPlus);
    const double w_0m = rb.bohr(kZero, kMinus);
    const double w_0p = rb.bohr(kZero, kPlus);

    auto pa = [&](double w) { return gamma_pp(w, Branch::a, cfg, scale); };
    auto pb = [&](double w) { return gamma_pp(w, Branch::b, cfg, scale); };
    auto ma = [&](double w) { return gamma_mm(w, Branch::a, cfg, scale); };
    auto mb = [&](double w) { return gamma_mm(w, Branch::b, cfg, scale); };

    auto& g = rb.gamma;
    g[0] = pa(w_p0) * c2t * c2p + pb(w_p0) * s2t * c2p;
    g[1] = pa(w_m0) * c2t * s2p + pb(w_m0) * s2t * s2p;
    g[2] = pa(w_pm) * s2t * c2p * c2p + pb(w_pm) * c2t * c2p * c2p
         + ma(w_pm) * s2t * s2p * s2p + mb(w_pm) * c2t * s2p * s2p;
    g[3] = pa(w_mp) * s2t * c2p * c2p + pb(w_mp) * c2t * s2p * s2p
         + ma(w_mp) * s2t * c2p * c2p + mb(w_mp) * c2t * c2p * c2p;
    g[4] = (pa(0.0) * s2t + pb(0.0) * c2t + ma(0.0) * s2t + mb(0.0) * c2t) * s2p * c2p;
    g[5] = ma(w_0m) * c2t * s2p + mb(w_0m) * s2t * s2p;
    g[6] = ma(w_0p) * c2t * c2p + mb(w_0p) * s2t * c2p;

    using namespace std::complex_literals;
    const double d_p0 = -0.5 * (rb.g(1) + rb.g(3) + rb.g(5) + rb.g(6) + rb.g(7));
    const double d_pm = -0.5 * (rb.g(1) + rb.g(2) + rb.g(3) + rb.g(4) - 4.0 * rb.g(5));
    const double d_0m = -0.5 * (rb.g(2) + rb.g(4) + rb.g(5) + rb.g(6) + rb.g(7));
    auto& G = rb.big_gamma;
    G(kPlus, kZero) = -1i * w_p0 + d_p0;
    G(kZero, kPlus) = -1i * w_0p + d_p0;
    G(kPlus, kMinus) = -1i * w_pm + d_pm;
    G(kMinus, kPlus) = -1i * w_mp + d_pm;
    G(kZero, kMinus) = -1i * w_0m + d_0m;
    G(kMinus, kZero) = -1i * w_m0 + d_0m;
    G(kPlus, kPlus) = -(rb.g(1) + rb.g(3));
    G(kZero, kZero) = -(rb.g(6) + rb.g(7));
    G(kMinus, kMinus) = -(rb.g(2) + rb.g(4));
    return rb;
}

} // namespace stirap
