// Copyright 2026 The ccaswitch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Shared helpers and independent oracles for the unit tests.

#pragma once

#include <complex>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "ccaswitch/model.hpp"

namespace ccaswitch::testing {

/// exp(-i H t) by Pade scaling-and-squaring, independent of the eigensolver.
inline Eigen::MatrixXcd expm_oracle(const Eigen::MatrixXd &h, double t) {
    const Eigen::MatrixXcd generator = std::complex<double>(0.0, -t) * h.cast<std::complex<double>>();
    return generator.exp();
}

inline double max_abs(const Eigen::MatrixXcd &m) { return m.cwiseAbs().maxCoeff(); }

/// Random valid two-register system with odd N <= max_N and n <= max_n.
inline SystemConfig random_config(std::mt19937_64 &rng, int max_N = 101, int max_n = 10) {
    std::uniform_int_distribution<int> half(0, (max_N - 1) / 2);
    std::uniform_int_distribution<int> reg(1, max_n);
    std::uniform_real_distribution<double> log_gi(-4.0, -1.0);
    std::uniform_real_distribution<double> jay(0.0, 0.2);
    std::bernoulli_distribution coin(0.5);
    const int N = 2 * half(rng) + 1;
    std::uniform_int_distribution<int> site(1, N);
    return make_resonant_system(N, reg(rng), site(rng), jay(rng), std::pow(10.0, log_gi(rng)), coin(rng));
}

/// Random n x n block of a Haar-ish unitary on 2n modes, so entries behave
/// like transfer amplitudes with some leakage.
inline Eigen::MatrixXcd random_amplitude_block(Eigen::Index n, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd z(2 * n, 2 * n);
    for (Eigen::Index i = 0; i < z.rows(); ++i)
        for (Eigen::Index j = 0; j < z.cols(); ++j) z(i, j) = {gauss(rng), gauss(rng)};
    const Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(z).householderQ();
    return q.topLeftCorner(n, n);
}

}  // namespace ccaswitch::testing
