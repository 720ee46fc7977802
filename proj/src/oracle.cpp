#include "stirap/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "stirap/errors.hpp"

namespace stirap {

namespace {

struct BareCoupling {
    int to;
    int from;
    Branch branch;
    bool emission;  // carries gamma_pp; otherwise gamma_mm
    const char* name;
};

constexpr std::array<BareCoupling, 4> kBareCouplings{{
    {0, 1, Branch::a, true, "A_a^+"},
    {1, 0, Branch::a, false, "A_a^-"},
    {2, 1, Branch::b, true, "A_b^+"},
    {1, 2, Branch::b, false, "A_b^-"},
}};

const char* level_name(int j) {
    static const char* names[] = {"+", "0", "-"};
    return names[j];
}

// Channel number of the unit transition |a_k><a_j|.
int transition_channel(int j, int k) {
    if (j == kPlus && k == kZero) return 1;
    if (j == kMinus && k == kZero) return 2;
    if (j == kPlus && k == kMinus) return 3;
    if (j == kMinus && k == kPlus) return 4;
    if (j == kZero && k == kMinus) return 6;
    if (j == kZero && k == kPlus) return 7;
    throw std::logic_error("transition_channel: diagonal");
}

// Visits every nonzero projected jump: fn(matrix, rate, coupling, j, k) with
// j == k == -1 for the diagonal (w = 0) part.
template <class F>
void for_each_jump(const FrameState& f, const SystemConfig& cfg, double scale, F&& fn) {
    const std::array<double, 3> w{f.omega_plus, f.omega_zero, f.omega_minus};
    for (const auto& bc : kBareCouplings) {
        // B^dag |to><from| B = (row `to` of B^dag) x (row `from` of B).
        const Eigen::Matrix3cd ad = f.basis.row(bc.to).adjoint() * f.basis.row(bc.from);

        auto rate_at = [&](double omega) {
            return bc.emission ? gamma_pp(omega, bc.branch, cfg, scale) : gamma_mm(omega, bc.branch, cfg, scale);
        };

        for (int j = 0; j < 3; ++j) {
            for (int k = 0; k < 3; ++k) {
                if (j == k || ad(k, j) == cplx(0.0)) continue;
                const double rate = rate_at(w[j] - w[k]);
                if (rate == 0.0) continue;
                Eigen::Matrix3cd op = Eigen::Matrix3cd::Zero();
                op(k, j) = ad(k, j);
                fn(op, rate, bc, j, k);
            }
        }

        const double rate = rate_at(0.0);
        const Eigen::Matrix3cd diag = ad.diagonal().asDiagonal();
        if (rate != 0.0 && diag.norm() != 0.0) fn(diag, rate, bc, -1, -1);
    }
}

} // namespace

std::vector<JumpOperator> jump_operators(const FrameState& f, const SystemConfig& cfg, double scale) {
    std::vector<JumpOperator> out;
    for_each_jump(f, cfg, scale, [&](const Eigen::Matrix3cd& op, double rate, const BareCoupling& bc, int j, int k) {
        if (j < 0) {
            out.push_back({op, rate, std::string(bc.name) + "(0)", 5});
        } else {
            out.push_back({op, rate, std::string(bc.name) + "(w" + level_name(j) + level_name(k) + ")",
                           transition_channel(j, k)});
        }
    });
    return out;
}

std::array<double, 7> channel_rates(const std::vector<JumpOperator>& jumps) {
    std::array<double, 7> r{};
    for (const auto& op : jumps) {
        double weight;
        if (op.channel == 5) {
            // Dephasing operators are multiples of P+ - P-; take the |a+><a+| weight.
            weight = std::norm(op.matrix(kPlus, kPlus));
        } else {
            weight = op.matrix.cwiseAbs2().sum();
        }
        r[op.channel - 1] += op.rate * weight;
    }
    return r;
}

Generator lindblad_superoperator(const Eigen::MatrixXcd& h, const std::vector<JumpOperator>& jumps) {
    if (h.rows() != 3 || h.cols() != 3) throw std::invalid_argument("lindblad_superoperator: h must be 3x3");
    for (const auto& op : jumps) {
        if (op.matrix.rows() != 3 || op.matrix.cols() != 3)
            throw std::invalid_argument("lindblad_superoperator: jump '" + op.label + "' must be 3x3");
        if (op.rate < 0) throw std::invalid_argument("lindblad_superoperator: negative rate for '" + op.label + "'");
    }

    const cplx minus_i(0.0, -1.0);
    const Eigen::Matrix3cd h3 = h;
    std::vector<Eigen::Matrix3cd> a(jumps.size()), ad(jumps.size()), ada(jumps.size());
    for (std::size_t i = 0; i < jumps.size(); ++i) {
        a[i] = jumps[i].matrix;
        ad[i] = a[i].adjoint();
        ada[i] = ad[i] * a[i];
    }

    Generator m;
    for (int col = 0; col < 9; ++col) {
        Eigen::Matrix3cd e = Eigen::Matrix3cd::Zero();
        e(kOrdering[col].first, kOrdering[col].second) = 1.0;
        Eigen::Matrix3cd out = minus_i * (h3 * e - e * h3);
        for (std::size_t i = 0; i < jumps.size(); ++i)
            out += jumps[i].rate * (a[i] * e * ad[i] - 0.5 * (ada[i] * e + e * ada[i]));
        m.col(col) = vectorize(out);
    }
    return m;
}

Generator oracle_generator(const FrameState& f, const SystemConfig& cfg, double scale) {
    // Same construction as lindblad_superoperator without the intermediate list.
    const Eigen::Matrix3cd h = nonadiabatic_hamiltonian(f);
    const cplx minus_i(0.0, -1.0);
    std::array<Eigen::Matrix3cd, 9> out;
    std::array<Eigen::Matrix3cd, 9> unit;
    for (int col = 0; col < 9; ++col) {
        unit[col].setZero();
        unit[col](kOrdering[col].first, kOrdering[col].second) = 1.0;
        out[col] = minus_i * (h * unit[col] - unit[col] * h);
    }
    for_each_jump(f, cfg, scale, [&](const Eigen::Matrix3cd& a, double rate, const BareCoupling&, int, int) {
        const Eigen::Matrix3cd ad = a.adjoint();
        const Eigen::Matrix3cd ada = ad * a;
        for (int col = 0; col < 9; ++col) {
            const Eigen::Matrix3cd& e = unit[col];
            out[col] += rate * (a * e * ad - 0.5 * (ada * e + e * ada));
        }
    });
    Generator m;
    for (int col = 0; col < 9; ++col) m.col(col) = vectorize(out[col]);
    return m;
}

int GridReport::unexpected() const {
    return static_cast<int>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return !e.known; }));
}

GridOptions GridOptions::standard() {
    const double pi = std::numbers::pi;
    GridOptions g;
    g.thetas = {0.0, pi / 8, pi / 4, 3 * pi / 8, pi / 2};
    g.phis = {0.1, 0.4, pi / 4, 1.0, 1.4};
    g.n_bars = {0.0, 1.0, 10.0};
    return g;
}

GridReport compare_generators(const GridOptions& opt, const std::vector<KnownEntry>& known) {
    GridReport rep;
    rep.tolerance = opt.tolerance;
    std::map<std::pair<int, int>, EntryDiscrepancy> found;

    for (double theta : opt.thetas) {
        for (double phi : opt.phis) {
            for (double n_bar : opt.n_bars) {
                const FrameState f = frame_from_angles(theta, phi, opt.theta_dot, opt.phi_dot, opt.omega);
                SystemConfig cfg;
                cfg.delta = f.delta;
                cfg.gamma_flat = opt.gamma_flat;
                cfg.n_bar = n_bar;
                const Generator analytic = build_generator(f, condensed_rates(f, cfg), opt.double_freq);
                const Generator oracle = oracle_generator(f, cfg);
                ++rep.points;
                for (int r = 0; r < 9; ++r) {
                    for (int c = 0; c < 9; ++c) {
                        const double d = std::abs(analytic(r, c) - oracle(r, c));
                        if (d <= opt.tolerance) {
                            rep.max_consistent_diff = std::max(rep.max_consistent_diff, d);
                            continue;
                        }
                        auto& e = found[{r, c}];
                        if (d > e.max_abs_diff) {
                            e = {r, c, d, analytic(r, c), oracle(r, c), theta, phi, n_bar, false};
                        }
                    }
                }
            }
        }
    }

    for (auto& [key, e] : found) {
        e.known = std::any_of(known.begin(), known.end(),
                              [&](const KnownEntry& k) { return k.row == e.row && k.col == e.col; });
        rep.entries.push_back(e);
    }
    for (const auto& k : known) {
        if (!found.count({k.row, k.col})) rep.unobserved.push_back(k);
    }
    return rep;
}

std::vector<KnownEntry> load_known_discrepancies(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("known", "cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("known", std::string("invalid JSON: ") + e.what());
    }
    std::vector<KnownEntry> out;
    for (const auto& item : j.at("entries")) {
        out.push_back({item.at("row").get<int>(), item.at("col").get<int>(), item.value("reason", "")});
    }
    return out;
}

std::string default_known_discrepancies_path() {
    return std::string(STIRAP_DATA_DIR) + "/known_discrepancies.json";
}

TimeSeries schrodinger_reference(const PulseConfig& cfg, double delta, const PropagationOptions& opt, int substeps) {
    validate(cfg);
    if (substeps < 1) throw std::invalid_argument("schrodinger_reference: substeps must be >= 1");
    const auto [n, dt] = step_plan(cfg, opt.dt_max);
    const int stride = opt.stride > 0 ? opt.stride : static_cast<int>(std::max<long>(1, n / 200));
    const double h = dt / substeps;
    const cplx minus_i(0.0, -1.0);

    auto rhs = [&](double t, const Eigen::Vector3cd& psi) -> Eigen::Vector3cd {
        const Envelope e = envelope(t, cfg);
        return minus_i * (bare_hamiltonian(e.pump, e.stokes, delta).cast<cplx>() * psi);
    };

    TimeSeries ts;
    Eigen::Vector3cd psi(1.0, 0.0, 0.0);
    auto record = [&](double t) {
        const Eigen::Matrix3cd rho = psi * psi.adjoint();
        ts.record(t, rho, LiouvilleVector::Zero());
        ts.final_bare = rho;
    };
    record(cfg.t_start);
    for (long step = 0; step < n; ++step) {
        for (int s = 0; s < substeps; ++s) {
            const double t = cfg.t_start + step * dt + s * h;
            const Eigen::Vector3cd k1 = rhs(t, psi);
            const Eigen::Vector3cd k2 = rhs(t + 0.5 * h, psi + 0.5 * h * k1);
            const Eigen::Vector3cd k3 = rhs(t + 0.5 * h, psi + 0.5 * h * k2);
            const Eigen::Vector3cd k4 = rhs(t + h, psi + h * k3);
            psi += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        if ((step + 1) % stride == 0 || step + 1 == n) record(cfg.t_start + (step + 1) * dt);
    }
    ts.diagnostics.dt = dt;
    ts.diagnostics.steps = n;
    return ts;
}

RateCheck check_angle_rates(const PulseConfig& cfg, double delta, int n_points, double h, double drive_fraction) {
    RateCheck rc;
    for (int i = 0; i < n_points; ++i) {
        const double t = cfg.t_start + (cfg.t_end - cfg.t_start) * i / (n_points - 1);
        if (t - h < cfg.t_start || t + h > cfg.t_end) continue;
        const Envelope e = envelope(t, cfg);
        if (e.total() < drive_fraction * cfg.omega0) continue;
        const AngleRates an = angle_rates(e, delta);
        const Envelope lo = envelope(t - h, cfg), hi = envelope(t + h, cfg);
        const MixingAngles a_lo = mixing_angles(lo.pump, lo.stokes, delta, cfg.floor());
        const MixingAngles a_hi = mixing_angles(hi.pump, hi.stokes, delta, cfg.floor());
        const double fd_theta = (a_hi.theta - a_lo.theta) / (2 * h);
        const double fd_phi = (a_hi.phi - a_lo.phi) / (2 * h);
        const double rt = std::abs(fd_theta - an.theta_dot) / std::max(std::abs(an.theta_dot), 1e-3);
        const double rp = std::abs(fd_phi - an.phi_dot) / std::max(std::abs(an.phi_dot), 1e-3);
        if (std::max(rt, rp) > std::max(rc.max_rel_theta, rc.max_rel_phi)) rc.worst_time = t;
        rc.max_rel_theta = std::max(rc.max_rel_theta, rt);
        rc.max_rel_phi = std::max(rc.max_rel_phi, rp);
    }
    return rc;
}

} // namespace stirap
