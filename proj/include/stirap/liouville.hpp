// Nine-component Liouville vector and the analytic generator acting on it.

#pragma once

#include <array>
#include <complex>
#include <utility>

#include <Eigen/Dense>

#include "stirap/frame.hpp"
#include "stirap/rates.hpp"

namespace stirap {

using cplx = std::complex<double>;
using LiouvilleVector = Eigen::Matrix<cplx, 9, 1>;
using Generator = Eigen::Matrix<cplx, 9, 9>;

// (row, column) of rho for each vector slot, levels ordered (+, 0, -):
// rho+0, rho+-, rho0-, rho0+, rho-+, rho-0, rho++, rho00, rho--
inline constexpr std::array<std::pair<int, int>, 9> kOrdering{{
    {0, 1}, {0, 2}, {1, 2}, {1, 0}, {2, 0}, {2, 1}, {0, 0}, {1, 1}, {2, 2},
}};

int slot_of(int j, int k);

LiouvilleVector vectorize(const Eigen::Matrix3cd& rho);
Eigen::Matrix3cd unvectorize(const LiouvilleVector& v);

// The printed 9x9 generator. Coherence diagonals are big_gamma(j, k); with
// `double_freq` each carries a second -i w_jk.
Generator build_generator(const FrameState& f, const RateBundle& rates, bool double_freq = false);

// B rho B^dag.
Eigen::Matrix3cd to_bare(const LiouvilleVector& v, const FrameState& f);

// Adiabatic image of |0><0|.
LiouvilleVector initial_state(const FrameState& f);

} // namespace stirap
