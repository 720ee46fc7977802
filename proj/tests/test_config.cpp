#include <cmath>
#include <numbers>
#include <string>

#include <doctest.h>

#include "stirap/config.hpp"
#include "stirap/errors.hpp"

using namespace stirap;

namespace {

ConfigError config_error(const std::string& text, bool sweep = false) {
    try {
        const Document doc = parse_document(text);
        if (sweep)
            sweep_spec_from(doc);
        else
            run_config_from(doc);
    } catch (const ConfigError& e) {
        return e;
    }
    FAIL("expected a ConfigError");
    return ConfigError("", "");
}

}

TEST_SUITE("config") {

TEST_CASE("empty document gives protocol defaults") {
    const RunConfig cfg = run_config_from(parse_text(""));
    CHECK(cfg.pulse.protocol == Protocol::stirap);
    CHECK(cfg.pulse.omega0 == 20.0);
    CHECK(cfg.pulse.delay == 2.0);
    CHECK(cfg.system.gamma_flat == 0.0);
    CHECK(cfg.system.bath == BathMode::flat);
    CHECK(cfg.options.generator == GeneratorKind::oracle);
    CHECK(std::isinf(cfg.options.dt_max));

    const RunConfig f = run_config_from(parse_text("[pulse]\nprotocol = FSTIRAP\n"));
    CHECK(f.pulse.delay == 2.5);
    CHECK(f.pulse.alpha == doctest::Approx(std::numbers::pi / 4));
}

TEST_CASE("text form with comments, lists and booleans") {
    const Document doc = parse_text("# header\n"
                                    "[pulse]\n"
                                    "protocol = fstirap   ; trailing\n"
                                    "omega0 = 15\n"
                                    "\n"
                                    "[system]\n"
                                    "n_bar = 10\n"
                                    "gamma_flat = 0.25\n"
                                    "pulse_scaled_coupling = true\n"
                                    "[run]\n"
                                    "generator = analytic\n"
                                    "stride = 5\n"
                                    "dt = 0.002\n");
    CHECK(doc.line_of("pulse", "omega0") == 4);
    CHECK(doc.line_of("system", "gamma_flat") == 8);
    const RunConfig cfg = run_config_from(doc);
    CHECK(cfg.pulse.protocol == Protocol::fstirap);
    CHECK(cfg.pulse.omega0 == 15.0);
    CHECK(cfg.system.n_bar == 10.0);
    CHECK(cfg.system.gamma_flat == 0.25);
    CHECK(cfg.system.pulse_scaled_coupling);
    CHECK(cfg.options.generator == GeneratorKind::analytic);
    CHECK(cfg.options.stride == 5);
    CHECK(cfg.options.dt_max == 0.002);
}

TEST_CASE("JSON and text forms are interchangeable") {
    const RunConfig a = run_config_from(parse_document("[pulse]\nsigma = 1.5\n[system]\ngamma_flat = 0.1\n"));
    const RunConfig b = run_config_from(parse_document(R"({"pulse": {"sigma": 1.5}, "system": {"gamma_flat": 0.1}})"));
    CHECK(to_json(a) == to_json(b));
}

TEST_CASE("snapshot reproduces the configuration") {
    RunConfig cfg = run_config_from(parse_text("[pulse]\nprotocol = fstirap\nalpha = 0.5\n"
                                               "[system]\nbath = spectral\ncoupling_sq = 0.3\nn_bar = 1\n"
                                               "[run]\ndt = 0.004\ndouble_freq = true\n"));
    Document doc;
    doc.root = to_json(cfg);
    const RunConfig back = run_config_from(doc);
    CHECK(to_json(back) == to_json(cfg));
    CHECK(back.pulse.alpha == 0.5);
    CHECK(back.options.double_freq);

    doc.root = to_json(run_config_from(parse_text("")));
    CHECK(doc.root["run"]["dt"].is_null());
    CHECK(std::isinf(run_config_from(doc).options.dt_max));
}

TEST_CASE("negative sigma is rejected with its field and line") {
    const ConfigError e = config_error("[pulse]\nomega0 = 20\nsigma = -1\n");
    CHECK(e.field() == "pulse.sigma");
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("sigma") != std::string::npos);
}

TEST_CASE("malformed documents name the problem") {
    CHECK(config_error("[pulse]\nomega = 3\n").field() == "pulse.omega");
    CHECK(config_error("[pulse]\nomega0 = abc\n").field() == "pulse.omega0");
    CHECK(config_error("[pulse]\nomega0 = 1\nomega0 = 2\n").line() == 3);
    CHECK(config_error("[extras]\nx = 1\n").field() == "extras");
    CHECK(config_error("omega0 = 1\n").line() == 1);
    CHECK(config_error("[pulse]\njust text\n").line() == 2);
    CHECK(config_error("[pulse]\nprotocol = raman\n").field() == "pulse.protocol");
    CHECK(config_error("[system]\nn_bar = -2\n").field() == "system.n_bar");
    CHECK(config_error("[system]\nbath = ohmic\n").line() == 2);
    CHECK(config_error("[run]\ndt = 0\n").field() == "run.dt");
    CHECK(config_error("[run]\nstride = 1.5\n").field() == "run.stride");
    CHECK(config_error("{\"pulse\": {\"sigma\": -2}}").field() == "pulse.sigma");
    CHECK(config_error("{\"pulse\": ").line() >= 1);
    CHECK(config_error("[sweep]\naxis = n_bar\nvalues = 1\n").field() == "sweep");
}

TEST_CASE("sweep ranges and lists") {
    SweepSpec s = sweep_spec_from(parse_text("[sweep]\naxis = gamma_flat\nstart = 0\nstop = 0.2\ncount = 101\n"));
    CHECK(s.axis == SweepAxis::gamma_flat);
    REQUIRE(s.values.size() == 101);
    CHECK(s.values[0] == 0.0);
    CHECK(s.values[100] == doctest::Approx(0.2));
    CHECK(s.values[1] == doctest::Approx(1.0 / 500));

    s = sweep_spec_from(parse_text("[pulse]\nprotocol = fstirap\n[system]\nn_bar = 1\n"
                                   "[sweep]\naxis = coupling_sq\nvalues = 0, 0.1, 0.3\nobservables = bare_pops, finals_only\n"));
    CHECK(s.base.system.bath == BathMode::spectral);
    CHECK(s.values == std::vector<double>{0.0, 0.1, 0.3});
    CHECK(s.observables.bare_pops);
    CHECK_FALSE(s.observables.bare_cohs);
    CHECK(s.observables.finals_only);
    CHECK(s.run_at(2).system.coupling_sq == 0.3);
    CHECK(s.run_at(2).system.n_bar == 1.0);

    s = sweep_spec_from(parse_text("[sweep]\naxis = n_bar\nvalues = 0, 5, 10\n"));
    CHECK(s.run_at(1).system.n_bar == 5.0);
}

TEST_CASE("sweep specifications are validated") {
    CHECK(config_error("[sweep]\naxis = n_bar\nvalues = 1, 1\n", true).field() == "sweep.values");
    CHECK(config_error("[sweep]\naxis = n_bar\nvalues = 2, 1\n", true).line() == 3);
    CHECK(config_error("[sweep]\naxis = n_bar\nvalues = -1, 1\n", true).field() == "sweep.values");
    CHECK(config_error("[sweep]\naxis = temperature\nvalues = 1\n", true).field() == "sweep.axis");
    CHECK(config_error("[sweep]\nvalues = 1\n", true).field() == "sweep.axis");
    CHECK(config_error("[sweep]\naxis = n_bar\n", true).field() == "sweep.values");
    CHECK(config_error("[sweep]\naxis = n_bar\nvalues = 1\nstart = 0\n", true).field() == "sweep.values");
    CHECK(config_error("[system]\nbath = spectral\n[sweep]\naxis = gamma_flat\nvalues = 1\n", true).field() ==
          "system.bath");
    CHECK(config_error("[sweep]\naxis = n_bar\nvalues = 1\nobservables = everything\n", true).field() ==
          "sweep.observables");
    CHECK(config_error("[pulse]\nsigma = 0\n[sweep]\naxis = n_bar\nvalues = 1\n", true).field() == "pulse.sigma");
    CHECK(config_error("{\"sweep\": {\"axis\": [\"n_bar\", \"gamma_flat\"], \"values\": [1]}}", true).field() ==
          "sweep.axis");
}

}
