#include <cmath>
#include <numbers>

#include <doctest.h>

#include "stirap/oracle.hpp"

using namespace stirap;
using std::numbers::pi;

namespace {

SystemConfig bath(double gamma, double n_bar) {
    SystemConfig s;
    s.gamma_flat = gamma;
    s.n_bar = n_bar;
    return s;
}

}

TEST_SUITE("oracle") {

TEST_CASE("zero temperature drops the absorption channels") {
    const FrameState f = frame_from_angles(0.6, 0.5, 0.0, 0.0, 4.0);
    const auto jumps = jump_operators(f, bath(0.3, 0.0));
    CHECK_FALSE(jumps.empty());
    for (const auto& j : jumps) {
        CHECK(j.channel != 6);
        CHECK(j.channel != 7);
        CHECK(j.rate > 0.0);
        CHECK(j.matrix.norm() > 0.0);
    }
}

TEST_CASE("at theta = 0 the upper-to-dark channel comes from branch a alone") {
    const double phi = 0.4, g = 0.3;
    const FrameState f = frame_from_angles(0.0, phi, 0.0, 0.0, 4.0);
    double weight = 0.0;
    for (const auto& j : jump_operators(f, bath(g, 0.0))) {
        if (j.channel != 1) continue;
        CHECK(j.label.rfind("A_a", 0) == 0);
        CHECK(std::abs(j.matrix(kZero, kPlus)) == doctest::Approx(std::cos(phi)));
        weight += j.rate * std::norm(j.matrix(kZero, kPlus));
    }
    CHECK(weight == doctest::Approx(g * std::cos(phi) * std::cos(phi)));
}

TEST_CASE("no coupling gives no jumps") {
    CHECK(jump_operators(frame_from_angles(0.6, 0.5, 0.1, 0.1, 4.0), bath(0.0, 10.0)).empty());
}

TEST_CASE("Hamiltonian-only superoperator rotates coherences") {
    Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
    h(0, 0) = 1.0;
    h(2, 2) = -1.0;
    const Generator m = lindblad_superoperator(h, {});
    Generator off = m;
    off.diagonal().setZero();
    CHECK(off.cwiseAbs().maxCoeff() == 0.0);
    const double e[3] = {1.0, 0.0, -1.0};
    for (int i = 0; i < 9; ++i) {
        const auto [j, k] = kOrdering[i];
        CHECK(std::abs(m(i, i) - cplx(0.0, -(e[j] - e[k]))) == 0.0);
    }
}

TEST_CASE("single amplitude-damping jump") {
    JumpOperator a;
    a.matrix = Eigen::MatrixXcd::Zero(3, 3);
    a.matrix(kZero, kPlus) = 1.0;
    a.rate = 0.7;
    const Generator m = lindblad_superoperator(Eigen::Matrix3cd::Zero(), {a});
    const int pp = slot_of(kPlus, kPlus), zz = slot_of(kZero, kZero);
    CHECK(m(pp, pp) == cplx(-0.7));
    CHECK(m(zz, pp) == cplx(0.7));
    CHECK(m(pp, zz) == cplx(0.0));
    CHECK(m(slot_of(kPlus, kZero), slot_of(kPlus, kZero)) == cplx(-0.35));
}

TEST_CASE("superoperator rejects malformed jumps") {
    JumpOperator bad;
    bad.matrix = Eigen::MatrixXcd::Identity(2, 2);
    bad.rate = 1.0;
    CHECK_THROWS_AS(lindblad_superoperator(Eigen::Matrix3cd::Zero(), {bad}), std::invalid_argument);
    bad.matrix = Eigen::MatrixXcd::Identity(3, 3);
    bad.rate = -1.0;
    CHECK_THROWS_AS(lindblad_superoperator(Eigen::Matrix3cd::Zero(), {bad}), std::invalid_argument);
    CHECK_THROWS_AS(lindblad_superoperator(Eigen::MatrixXcd::Zero(2, 2), {}), std::invalid_argument);
}

TEST_CASE("trace is a left null vector of the oracle generator") {
    for (double theta : {0.0, 0.5, 1.3})
        for (double phi : {0.1, 0.7, 1.4})
            for (double n : {0.0, 1.0, 10.0}) {
                const FrameState f = frame_from_angles(theta, phi, 0.7, -0.3, 5.0);
                const Generator m = oracle_generator(f, bath(0.3, n));
                const auto col_sums = m.row(6) + m.row(7) + m.row(8);
                CHECK(col_sums.cwiseAbs().maxCoeff() <= 1e-13);
            }
}

TEST_CASE("fast oracle path matches the explicit jump list") {
    const FrameState f = frame_from_angles(0.8, 0.6, 0.4, 0.2, 5.0);
    const SystemConfig s = bath(0.3, 1.0);
    const Generator fast = oracle_generator(f, s);
    const Generator slow = lindblad_superoperator(nonadiabatic_hamiltonian(f), jump_operators(f, s));
    CHECK((fast - slow).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("generator grid reproduces exactly the documented discrepancies") {
    const auto known = load_known_discrepancies(default_known_discrepancies_path());
    CHECK(known.size() == 7);
    const GridReport rep = compare_generators(GridOptions::standard(), known);
    CHECK(rep.points == 75);
    CHECK(rep.unexpected() == 0);
    CHECK(rep.unobserved.empty());
    CHECK(rep.ok());
    CHECK(rep.max_consistent_diff <= 1e-12);
    CHECK(rep.entries.size() == known.size());
    for (const auto& e : rep.entries) {
        CHECK(e.known);
        CHECK(e.max_abs_diff > 1e-12);
    }
}

TEST_CASE("an empty discrepancy list makes every known entry unexpected") {
    const GridReport rep = compare_generators(GridOptions::standard(), {});
    CHECK(rep.unexpected() == 7);
    CHECK_FALSE(rep.ok());
}

TEST_CASE("frequency doubling is flagged on the coherence diagonals") {
    GridOptions opt = GridOptions::standard();
    opt.double_freq = true;
    const GridReport rep = compare_generators(opt, load_known_discrepancies(default_known_discrepancies_path()));
    CHECK_FALSE(rep.ok());
    int flagged = 0;
    for (const auto& e : rep.entries)
        if (!e.known) {
            CHECK(e.row == e.col);
            CHECK(e.row < 6);
            ++flagged;
        }
    CHECK(flagged >= 2);
}

TEST_CASE("missing discrepancy list is an error") {
    CHECK_THROWS(load_known_discrepancies("/nonexistent/known.json"));
}

TEST_CASE("state-vector reference") {
    const TimeSeries st = schrodinger_reference(make_pulse(Protocol::stirap), 1.0);
    CHECK(st.bare_pops.back()[2] >= 0.99);

    const TimeSeries fs = schrodinger_reference(make_pulse(Protocol::fstirap), 1.0);
    CHECK(std::abs(fs.bare_pops.back()[0] - 0.5) <= 0.02);
    CHECK(std::abs(fs.bare_pops.back()[2] - 0.5) <= 0.02);

    PulseConfig off = make_pulse(Protocol::stirap);
    off.omega0 = 1e-300;
    const TimeSeries idle = schrodinger_reference(off, 1.0);
    for (const auto& p : idle.bare_pops) {
        CHECK(p[0] == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(p[1] <= 1e-15);
        CHECK(p[2] <= 1e-15);
    }
}

TEST_CASE("closed-system propagation agrees with the state-vector reference") {
    // The analytic generator carries the printed M[5][4] sign, which breaks
    // unitarity; it must visibly miss the reference.
    for (Protocol proto : {Protocol::stirap, Protocol::fstirap}) {
        for (GeneratorKind kind : {GeneratorKind::oracle, GeneratorKind::analytic}) {
            PropagationOptions opt;
            opt.generator = kind;
            const PulseConfig cfg = make_pulse(proto);
            const TimeSeries ts = propagate(cfg, SystemConfig{}, opt);
            const TimeSeries ref = schrodinger_reference(cfg, 1.0, opt);
            REQUIRE(ts.times.size() == ref.times.size());
            double dev = 0.0;
            for (std::size_t i = 0; i < ts.times.size(); ++i) {
                CHECK(ts.times[i] == ref.times[i]);
                for (int k = 0; k < 3; ++k) dev = std::max(dev, std::abs(ts.bare_pops[i][k] - ref.bare_pops[i][k]));
            }
            if (kind == GeneratorKind::oracle)
                CHECK(dev <= 1e-6);
            else
                CHECK(dev > 1e-5);
        }
    }
}

TEST_CASE("closed-form angle rates match finite differences") {
    for (Protocol proto : {Protocol::stirap, Protocol::fstirap}) {
        const RateCheck rc = check_angle_rates(make_pulse(proto), 1.0);
        CHECK(rc.max_rel_theta <= 1e-6);
        CHECK(rc.max_rel_phi <= 1e-6);
    }
}

}
