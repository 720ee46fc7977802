#include "stirap/propagator.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <optional>
#include <string>

#include "stirap/errors.hpp"
#include "stirap/oracle.hpp"

namespace stirap {

std::string_view to_string(GeneratorKind g) { return g == GeneratorKind::analytic ? "analytic" : "oracle"; }

GeneratorKind generator_from_string(std::string_view name) {
    std::string lower(name);
    for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "analytic") return GeneratorKind::analytic;
    if (lower == "oracle") return GeneratorKind::oracle;
    throw ConfigError("generator", "expected 'analytic' or 'oracle', got '" + std::string(name) + "'");
}

void TimeSeries::record(double t, const Eigen::Matrix3cd& bare, const LiouvilleVector& v) {
    times.push_back(t);
    bare_pops.push_back({bare(0, 0).real(), bare(1, 1).real(), bare(2, 2).real()});
    bare_cohs.push_back({bare(0, 1), bare(1, 2), bare(0, 2)});
    adiabatic_pops.push_back({v(6).real(), v(7).real(), v(8).real()});
}

double coupling_scale(const FrameState& f, const PulseConfig& pulse, const SystemConfig& sys) {
    if (!sys.pulse_scaled_coupling) return 1.0;
    const double r = f.omega / pulse.omega0;
    return r * r;
}

void add_frequency_doubling(Generator& m, const FrameState& f) {
    const std::array<double, 3> w{f.omega_plus, f.omega_zero, f.omega_minus};
    for (int i = 0; i < 6; ++i) {
        const auto [j, k] = kOrdering[i];
        m(i, i) += cplx(0.0, -(w[j] - w[k]));
    }
}

Generator generator_at(const FrameState& f, const PulseConfig& pulse, const SystemConfig& sys,
                       const PropagationOptions& opt) {
    const double scale = coupling_scale(f, pulse, sys);
    if (opt.generator == GeneratorKind::analytic)
        return build_generator(f, condensed_rates(f, sys, scale), opt.double_freq);
    Generator m = oracle_generator(f, sys, scale);
    if (opt.double_freq) add_frequency_doubling(m, f);
    return m;
}

std::pair<long, double> step_plan(const PulseConfig& pulse, double dt_max) {
    if (!(dt_max > 0)) throw ConfigError("dt", "must be > 0");
    const double dt_target = std::min(dt_max, pulse.sigma / 200.0);
    const double span = pulse.t_end - pulse.t_start;
    const long n = std::max<long>(1, static_cast<long>(std::ceil(span / dt_target - 1e-9)));
    return {n, span / n};
}

namespace {

double hermiticity_defect(const LiouvilleVector& v) {
    double d = std::max({std::abs(v(3) - std::conj(v(0))), std::abs(v(4) - std::conj(v(1))),
                         std::abs(v(5) - std::conj(v(2)))});
    for (int i = 6; i < 9; ++i) d = std::max(d, std::abs(v(i).imag()));
    return d;
}

} // namespace

TimeSeries propagate(const PulseConfig& pulse, const SystemConfig& sys, const LiouvilleVector& rho0,
                     const PropagationOptions& opt) {
    validate(pulse);
    validate(sys);
    if (opt.stride < 0) throw ConfigError("stride", "must be >= 0");
    const auto [n, dt] = step_plan(pulse, opt.dt_max);
    const int stride = opt.stride > 0 ? opt.stride : static_cast<int>(std::max<long>(1, n / 200));

    TimeSeries ts;
    Diagnostics& diag = ts.diagnostics;
    diag.dt = dt;
    diag.steps = n;

    std::optional<double> last_theta;
    auto frame = [&](double t) { return frame_at(pulse, sys.delta, t, last_theta); };
    auto rhs = [&](const FrameState& f, const LiouvilleVector& v) -> LiouvilleVector {
        return generator_at(f, pulse, sys, opt) * v;
    };

    auto inspect = [&](double t, const FrameState& f, const LiouvilleVector& v) {
        const double drift = std::abs((v(6) + v(7) + v(8)).real() - 1.0);
        diag.max_trace_drift = std::max(diag.max_trace_drift, drift);
        diag.max_hermiticity_defect = std::max(diag.max_hermiticity_defect, hermiticity_defect(v));
        const double pmin = std::min({v(6).real(), v(7).real(), v(8).real()});
        diag.min_population = std::min(diag.min_population, pmin);
        if (f.omega >= opt.drive_fraction * pulse.omega0) {
            const double ratio = adiabaticity_margin(f).max();
            if (ratio > diag.max_adiabaticity_ratio) {
                diag.max_adiabaticity_ratio = ratio;
                diag.max_adiabaticity_time = t;
            }
        }
        if (!(drift <= opt.trace_tolerance))
            throw PropagationError(t, "trace drift " + std::to_string(drift) + " exceeds tolerance");
        if (!(pmin >= opt.population_floor))
            throw PropagationError(t, "population " + std::to_string(pmin) + " below floor");
    };

    FrameState f0 = frame(pulse.t_start);
    if (!f0.held) last_theta = f0.theta;
    LiouvilleVector v = rho0;
    inspect(pulse.t_start, f0, v);
    ts.record(pulse.t_start, to_bare(v, f0), v);

    FrameState f_end = f0;
    for (long step = 0; step < n; ++step) {
        const double t = pulse.t_start + step * dt;
        const FrameState fa = step == 0 ? f0 : frame(t);
        const FrameState fm = frame(t + 0.5 * dt);
        const double t_next = pulse.t_start + (step + 1) * dt;
        const FrameState fb = frame(t_next);

        const LiouvilleVector k1 = rhs(fa, v);
        const LiouvilleVector k2 = rhs(fm, v + 0.5 * dt * k1);
        const LiouvilleVector k3 = rhs(fm, v + 0.5 * dt * k2);
        const LiouvilleVector k4 = rhs(fb, v + dt * k3);
        v += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        if (!fb.held) last_theta = fb.theta;
        inspect(t_next, fb, v);
        if ((step + 1) % stride == 0 || step + 1 == n) ts.record(t_next, to_bare(v, fb), v);
        f_end = fb;
    }

    diag.adiabaticity_flag = diag.max_adiabaticity_ratio > opt.adiabatic_threshold;
    ts.final_state = v;
    ts.final_bare = to_bare(v, f_end);
    return ts;
}

TimeSeries propagate(const PulseConfig& pulse, const SystemConfig& sys, const PropagationOptions& opt) {
    validate(pulse);
    const FrameState f0 = frame_at(pulse, sys.delta, pulse.t_start);
    return propagate(pulse, sys, initial_state(f0), opt);
}

LiouvilleVector steady_state(const Generator& m) {
    Generator a = m;
    Eigen::Matrix<cplx, 9, 1> b = Eigen::Matrix<cplx, 9, 1>::Zero();
    // Replace the rho00 row (dependent by trace conservation) with the trace condition.
    a.row(7).setZero();
    a(7, 6) = a(7, 7) = a(7, 8) = 1.0;
    b(7) = 1.0;
    return a.fullPivLu().solve(b);
}

} // namespace stirap
