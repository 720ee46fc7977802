// Command-line front end: simulate, sweep, validate.

#include <cmath>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "stirap/errors.hpp"
#include "stirap/sweep.hpp"

namespace {

struct Overrides {
    std::optional<int> stride;
    std::optional<double> dt;
    std::optional<std::string> generator;
    bool double_freq = false;

    void add_to(CLI::App* app, bool with_stride = true) {
        if (with_stride) app->add_option("--stride", stride, "Steps between recorded samples")->check(CLI::NonNegativeNumber);
        app->add_option("--dt", dt, "Maximum integration step")->check(CLI::PositiveNumber);
        app->add_option("--generator", generator, "analytic or oracle")->check(CLI::IsMember({"analytic", "oracle"}));
        app->add_flag("--double-freq", double_freq, "Rotate coherences at twice the Bohr frequency");
    }

    void apply(stirap::PropagationOptions& o) const {
        if (stride) o.stride = *stride;
        if (dt) o.dt_max = *dt;
        if (generator) o.generator = stirap::generator_from_string(*generator);
        if (double_freq) o.double_freq = true;
    }
};

void print_diagnostics(const stirap::Diagnostics& d) {
    std::cout << "  steps " << d.steps << ", dt " << d.dt << "\n"
              << "  max trace drift " << d.max_trace_drift << ", max Hermiticity defect " << d.max_hermiticity_defect
              << ", min population " << d.min_population << "\n"
              << "  max adiabaticity ratio " << d.max_adiabaticity_ratio << " at t = " << d.max_adiabaticity_time
              << (d.adiabaticity_flag ? "  [non-adiabatic]" : "") << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adiabatic-basis Lindblad propagation of a driven three-level Lambda system"};
    app.require_subcommand(1);

    std::string out_dir = "out";
    app.add_option("--out", out_dir, "Output directory")->capture_default_str();

    std::string config_path;
    Overrides sim_over;
    auto* sim = app.add_subcommand("simulate", "Propagate one configuration");
    sim->add_option("config", config_path, "Config file (sectioned text or JSON)")->required()->check(CLI::ExistingFile);
    sim->add_option("--out", out_dir, "Output directory");
    sim_over.add_to(sim);

    std::string sweep_path;
    Overrides sweep_over;
    int workers = 0;
    auto* sweep = app.add_subcommand("sweep", "Run a one-axis parameter sweep");
    sweep->add_option("sweep-file", sweep_path, "Sweep file")->required()->check(CLI::ExistingFile);
    sweep->add_option("--out", out_dir, "Output directory");
    sweep->add_option("--workers", workers, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    sweep_over.add_to(sweep);

    stirap::ValidateOptions vopt;
    Overrides val_over;
    auto* val = app.add_subcommand("validate", "Check the analytic generator and closed-system limit");
    val->add_option("--out", out_dir, "Output directory");
    val->add_option("--gamma", vopt.gamma, "Flat decay rate for the propagation checks")->check(CLI::NonNegativeNumber);
    val->add_option("--known", vopt.known_path, "Documented discrepancy list (JSON)")->check(CLI::ExistingFile);
    val_over.add_to(val);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sim) {
            stirap::RunConfig cfg = stirap::run_config_from(stirap::load_document(config_path));
            sim_over.apply(cfg.options);
            const stirap::RunRecord rec = stirap::run_simulate(cfg, out_dir);
            if (!rec.ok) {
                std::cerr << "propagation failed: " << rec.error << "\n";
                return 1;
            }
            const auto& r = rec.series.final_bare;
            std::cout << "final rho00 " << r(0, 0).real() << ", rho11 " << r(1, 1).real() << ", rho22 "
                      << r(2, 2).real() << ", |rho02| " << std::abs(r(0, 2)) << "\n";
            print_diagnostics(rec.series.diagnostics);
            std::cout << "wrote " << out_dir << "/timeseries_0000.csv and diagnostics.json (" << rec.wall_seconds
                      << " s)\n";
            return 0;
        }
        if (*sweep) {
            stirap::SweepSpec spec = stirap::sweep_spec_from(stirap::load_document(sweep_path));
            sweep_over.apply(spec.base.options);
            const stirap::SweepResult res = stirap::run_sweep(spec, out_dir, workers);
            std::cout << res.runs.size() << " runs over " << stirap::to_string(spec.axis) << ", " << res.failures
                      << " failed\n";
            for (const auto& r : res.runs)
                if (!r.ok) std::cerr << "  " << r.axis_value << ": " << r.error << "\n";
            if (res.summary.contains("rho22_fit")) {
                const auto& f = res.summary["rho22_fit"];
                std::cout << "rho22 - 1/3 decay constant " << f["decay_constant"].get<double>() << " (R^2 "
                          << f["r_squared"].get<double>() << ", " << f["points"].get<int>() << " points)\n";
            }
            std::cout << "wrote " << out_dir << "/finals.csv and diagnostics.json\n";
            return res.failures == 0 ? 0 : 1;
        }
        if (*val) {
            stirap::PropagationOptions p;
            val_over.apply(p);
            vopt.generator = p.generator;
            vopt.double_freq = p.double_freq;
            vopt.dt_max = p.dt_max;
            const stirap::ValidationResult res = stirap::run_validate(vopt, out_dir);
            const auto& grid = res.report["generator_grid"];
            std::cout << "generator grid: " << grid["points"].get<int>() << " points, "
                      << grid["entries"].size() << " differing entries, " << grid["unexpected"].get<int>()
                      << " unexpected\n";
            for (const auto& run : res.report["propagation"]) {
                std::cout << run["protocol"].get<std::string>() << ": ";
                if (run.contains("closed_system") && run["closed_system"].contains("max_population_deviation"))
                    std::cout << "closed-system deviation " << run["closed_system"]["max_population_deviation"].get<double>()
                              << "; ";
                std::cout << "angle-rate error " << run["angle_rates"]["max_rel_theta"].get<double>() << "\n";
            }
            std::cout << "wrote " << out_dir << "/validation_report.json\n";
            if (!res.ok) {
                std::cerr << "validation failed: " << res.first_failure << "\n";
                return 1;
            }
            std::cout << "validation passed\n";
            return 0;
        }
    } catch (const stirap::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
