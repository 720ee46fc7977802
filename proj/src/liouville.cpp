#include "stirap/liouville.hpp"

#include <cmath>
#include <stdexcept>

namespace stirap {

int slot_of(int j, int k) {
    for (int i = 0; i < 9; ++i)
        if (kOrdering[i].first == j && kOrdering[i].second == k) return i;
    throw std::out_of_range("slot_of: index outside 3x3");
}

LiouvilleVector vectorize(const Eigen::Matrix3cd& rho) {
    LiouvilleVector v;
    for (int i = 0; i < 9; ++i) v(i) = rho(kOrdering[i].first, kOrdering[i].second);
    return v;
}

Eigen::Matrix3cd unvectorize(const LiouvilleVector& v) {
    Eigen::Matrix3cd rho;
    for (int i = 0; i < 9; ++i) rho(kOrdering[i].first, kOrdering[i].second) = v(i);
    return rho;
}

Generator build_generator(const FrameState& f, const RateBundle& r, bool double_freq) {
    const double s = std::sin(f.phi), c = std::cos(f.phi);
    const double ts = f.theta_dot * s, tc = f.theta_dot * c, pd = f.phi_dot;
    const auto& G = r.big_gamma;
    auto diag = [&](int j, int k) -> cplx {
        cplx d = G(j, k);
        if (double_freq) d += cplx(0.0, -r.bohr(j, k));
        return d;
    };

    Generator m;
    m << diag(0, 1), -tc, 0, 0, 0, pd, -ts, ts, 0,
         tc, diag(0, 2), ts, 0, 0, 0, -pd, 0, pd,
         0, -ts, diag(1, 2), -pd, 0, 0, 0, tc, -tc,
         0, 0, pd, diag(1, 0), -tc, 0, -ts, ts, 0,
         0, 0, 0, tc, diag(2, 0), ts, -pd, 0, pd,
         -pd, 0, 0, 0, ts, diag(2, 1), 0, tc, -tc,
         ts, pd, 0, ts, pd, 0, G(0, 0), r.g(7), r.g(4),
         -ts, 0, -tc, -ts, 0, -tc, r.g(1), G(1, 1), r.g(2),
         0, -pd, tc, 0, -pd, tc, r.g(3), r.g(6), G(2, 2);
    return m;
}

Eigen::Matrix3cd to_bare(const LiouvilleVector& v, const FrameState& f) {
    return f.basis * unvectorize(v) * f.basis.adjoint();
}

LiouvilleVector initial_state(const FrameState& f) {
    Eigen::Matrix3cd ground = Eigen::Matrix3cd::Zero();
    ground(0, 0) = 1.0;
    return vectorize(f.basis.adjoint() * ground * f.basis);
}

} // namespace stirap
