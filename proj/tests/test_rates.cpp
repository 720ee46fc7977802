#include <cmath>
#include <numbers>

#include <doctest.h>

#include "stirap/errors.hpp"
#include "stirap/oracle.hpp"
#include "stirap/rates.hpp"

using namespace stirap;
using std::numbers::pi;

namespace {

SystemConfig flat(double gamma, double n_bar) {
    SystemConfig s;
    s.gamma_flat = gamma;
    s.n_bar = n_bar;
    return s;
}

}

TEST_SUITE("rates") {

TEST_CASE("occupation is the constant bath value") {
    SystemConfig s;
    CHECK(occupation(0.7, s) == 0.0);
    s.n_bar = 1;
    CHECK(occupation(3.0, s) == 1.0);
    s.n_bar = 10;
    CHECK(occupation(0.5, s) == 10.0);
}

TEST_CASE("emission and absorption windows") {
    const SystemConfig zero_t = flat(0.4, 0.0);
    for (double w : {-5.0, 0.0, 2.0, 30.0}) {
        CHECK(gamma_mm(w, Branch::a, zero_t) == 0.0);
        CHECK(gamma_mm(w, Branch::b, zero_t) == 0.0);
        CHECK(gamma_pp(w, Branch::a, zero_t) == 0.4);
    }
    SystemConfig s = flat(0.4, 2.0);
    s.omega_a = -1.0;
    CHECK(gamma_pp(-1.0, Branch::a, s) == 0.0);
    CHECK(gamma_pp(-1.5, Branch::a, s) == 0.0);
    CHECK(gamma_pp(-0.5, Branch::a, s) == doctest::Approx(0.4 * 3.0));
    CHECK(gamma_mm(1.0, Branch::a, s) == 0.0);
    CHECK(gamma_mm(0.5, Branch::a, s) == doctest::Approx(0.8));
    CHECK(gamma_pp(-1.5, Branch::b, s) == doctest::Approx(1.2));
}

TEST_CASE("spectral bath scales with the coupling") {
    SystemConfig s;
    s.bath = BathMode::spectral;
    s.coupling_sq = 0.3;
    s.omega_scale = 2.0;
    s.gamma_flat = 99.0;
    CHECK(s.gamma_eff() == doctest::Approx(0.6));
    CHECK(gamma_pp(1.0, Branch::b, s, 0.5) == doctest::Approx(0.3));
}

TEST_CASE("closed system has no rates and pure rotation") {
    const FrameState f = frame_from_angles(0.6, 0.7, 0.2, 0.1, 4.0);
    const RateBundle r = condensed_rates(f, SystemConfig{});
    for (double g : r.gamma) CHECK(g == 0.0);
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            const cplx expect = j == k ? cplx(0.0) : cplx(0.0, -r.bohr(j, k));
            CHECK(std::abs(r.big_gamma(j, k) - expect) == 0.0);
        }
    }
}

TEST_CASE("zero temperature leaves only emission channels") {
    const FrameState f = frame_from_angles(0.9, 0.5, 0.0, 0.0, 3.0);
    const RateBundle r = condensed_rates(f, flat(0.5, 0.0));
    CHECK(r.g(2) > 0.0);
    CHECK(r.g(6) == 0.0);
    CHECK(r.g(7) == 0.0);
}

TEST_CASE("hand-evaluated rates at theta = 0, phi = pi/4") {
    const double g = 0.37;
    const FrameState f = frame_from_angles(0.0, pi / 4, 0.0, 0.0, 2.0);
    const RateBundle r = condensed_rates(f, flat(g, 0.0));
    CHECK(r.g(1) == doctest::Approx(g / 2).epsilon(1e-14));
    CHECK(r.g(2) == doctest::Approx(g / 2).epsilon(1e-14));
    CHECK(r.g(5) == doctest::Approx(g / 4).epsilon(1e-14));
}

TEST_CASE("flat-bath rates reduce to closed forms") {
    const double g = 0.2, n = 3.0, phi = 0.45;
    const FrameState f = frame_from_angles(1.1, phi, 0.0, 0.0, 5.0);
    const RateBundle r = condensed_rates(f, flat(g, n));
    const double c2 = std::pow(std::cos(phi), 2), s2 = std::pow(std::sin(phi), 2);
    CHECK(r.g(1) == doctest::Approx(g * (1 + n) * c2));
    CHECK(r.g(2) == doctest::Approx(g * (1 + n) * s2));
    CHECK(r.g(3) == doctest::Approx(g * (1 + n) * c2 * c2 + g * n * s2 * s2));
    CHECK(r.g(5) == doctest::Approx(g * (1 + 2 * n) * s2 * c2));
    CHECK(r.g(6) == doctest::Approx(g * n * s2));
    CHECK(r.g(7) == doctest::Approx(g * n * c2));
}

TEST_CASE("rates are non-decreasing in coupling and occupation") {
    for (double theta : {0.0, 0.4, 1.2, pi / 2}) {
        for (double phi : {0.2, 0.8, 1.3}) {
            const FrameState f = frame_from_angles(theta, phi, 0.0, 0.0, 6.0);
            RateBundle prev = condensed_rates(f, flat(0.0, 0.0));
            for (int i = 1; i <= 5; ++i) {
                const RateBundle cur = condensed_rates(f, flat(0.1 * i, 0.0));
                for (int k = 0; k < 7; ++k) CHECK(cur.gamma[k] >= prev.gamma[k]);
                prev = cur;
            }
            prev = condensed_rates(f, flat(0.3, 0.0));
            for (int i = 1; i <= 5; ++i) {
                const RateBundle cur = condensed_rates(f, flat(0.3, 2.0 * i));
                for (int k = 0; k < 7; ++k) CHECK(cur.gamma[k] >= prev.gamma[k]);
                prev = cur;
            }
        }
    }
}

TEST_CASE("population diagonals are dissipative") {
    for (double n : {0.0, 1.0, 10.0}) {
        const FrameState f = frame_from_angles(0.7, 0.6, 0.3, -0.2, 8.0);
        const RateBundle r = condensed_rates(f, flat(0.8, n));
        for (int j = 0; j < 3; ++j) CHECK(r.big_gamma(j, j).real() <= 0.0);
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                if (j != k) CHECK(r.big_gamma(j, k).real() == r.big_gamma(k, j).real());
    }
}

TEST_CASE("condensed rates agree with projected jump operators") {
    for (double theta : {0.0, 0.3, pi / 4, 1.2}) {
        for (double phi : {0.15, 0.6, 1.1}) {
            for (double n : {0.0, 1.0, 10.0}) {
                const FrameState f = frame_from_angles(theta, phi, 0.0, 0.0, 5.0);
                const SystemConfig s = flat(0.3, n);
                const RateBundle r = condensed_rates(f, s);
                const auto ch = channel_rates(jump_operators(f, s));
                for (int k : {0, 1, 2, 4, 5, 6}) CHECK(ch[k] == doctest::Approx(r.gamma[k]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("channel 4 carries its emission weight as cos^4 phi") {
    // Matches the projection only where sin and cos of phi coincide.
    const SystemConfig s = flat(0.3, 1.0);
    const FrameState even = frame_from_angles(0.8, pi / 4, 0.0, 0.0, 5.0);
    CHECK(channel_rates(jump_operators(even, s))[3] == doctest::Approx(condensed_rates(even, s).g(4)).epsilon(1e-12));
    const FrameState odd = frame_from_angles(0.8, 0.3, 0.0, 0.0, 5.0);
    CHECK(std::abs(channel_rates(jump_operators(odd, s))[3] - condensed_rates(odd, s).g(4)) > 1e-3);
}

TEST_CASE("system configuration validation names the field") {
    auto field_of = [](SystemConfig s) {
        try {
            validate(s);
        } catch (const ConfigError& e) {
            return e.field();
        }
        return std::string();
    };
    SystemConfig s;
    CHECK(field_of(s).empty());
    s.n_bar = -1;
    CHECK(field_of(s) == "n_bar");
    s = SystemConfig{};
    s.gamma_flat = -0.1;
    CHECK(field_of(s) == "gamma_flat");
    s = SystemConfig{};
    s.omega_b = 0.0;
    CHECK(field_of(s) == "omega_b");
    s = SystemConfig{};
    s.delta = std::nan("");
    CHECK(field_of(s) == "delta");
    CHECK_THROWS_AS(bath_mode_from_string("ohmic"), ConfigError);
}

}
