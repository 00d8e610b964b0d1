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

// Exact time evolution under real-symmetric Hamiltonians through their
// spectral decomposition H = V diag(E) V^T, so U(t) = V exp(-i E t) V^T holds
// to machine precision at any t.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "ccaswitch/error.hpp"

namespace ccaswitch {

using cplx = std::complex<double>;

inline constexpr double kSymmetryTolerance = 1e-12;
inline constexpr double kNormTolerance = 1e-8;

struct Eigensystem {
    Eigen::VectorXd energies;  ///< ascending
    Eigen::MatrixXd vectors;   ///< orthonormal columns, same order

    Eigen::Index dim() const { return energies.size(); }

    /// exp(-i E t) for every eigenvalue.
    Eigen::VectorXcd phases(double t) const {
        Eigen::VectorXcd out(dim());
        for (Eigen::Index k = 0; k < dim(); ++k) out(k) = std::polar(1.0, -energies(k) * t);
        return out;
    }
};

struct StateVector {
    Eigen::VectorXcd amplitudes;
    double time = 0.0;

    double norm() const { return amplitudes.norm(); }
};

/// F(j', j) = <target_j'| U(t) |source_j>.
struct AmplitudeMatrix {
    Eigen::MatrixXcd values;
    std::string source_label;
    std::string target_label;
    double time = 0.0;

    Eigen::Index rows() const { return values.rows(); }
    Eigen::Index cols() const { return values.cols(); }
    cplx operator()(Eigen::Index target, Eigen::Index source) const { return values(target, source); }
};

inline double max_asymmetry(const Eigen::MatrixXd &h) {
    return h.rows() == 0 ? 0.0 : (h - h.transpose()).cwiseAbs().maxCoeff();
}

inline Eigensystem spectral_decompose(const Eigen::MatrixXd &h) {
    require(h.rows() == h.cols(), "spectral_decompose: matrix is not square");
    require(h.rows() > 0, "spectral_decompose: empty matrix");
    require(max_asymmetry(h) <= kSymmetryTolerance, "spectral_decompose: matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    require(solver.info() == Eigen::Success, "spectral_decompose: eigensolver did not converge");
    return Eigensystem{solver.eigenvalues(), solver.eigenvectors()};
}

inline Eigen::MatrixXcd propagator(const Eigensystem &es, double t) {
    if (t == 0.0) return Eigen::MatrixXcd::Identity(es.dim(), es.dim());
    const Eigen::MatrixXcd v = es.vectors.cast<cplx>();
    return v * es.phases(t).asDiagonal() * v.transpose();
}

/// Applies U(t) to every column of `columns`.
template <typename Derived>
Eigen::MatrixXcd apply_propagator(const Eigensystem &es, const Eigen::MatrixBase<Derived> &columns,
                                  double t) {
    require(columns.rows() == es.dim(), "apply_propagator: dimension mismatch");
    if (t == 0.0) return columns;
    const Eigen::MatrixXcd v = es.vectors.cast<cplx>();
    Eigen::MatrixXcd modal = v.transpose() * columns;
    modal = es.phases(t).asDiagonal() * modal;
    return v * modal;
}

inline StateVector evolve_state(const Eigensystem &es, const StateVector &psi0, double t) {
    require(psi0.amplitudes.size() == es.dim(), "evolve_state: dimension mismatch");
    require(std::abs(psi0.norm() - 1.0) <= kNormTolerance, "evolve_state: state is not normalized");
    return StateVector{apply_propagator(es, psi0.amplitudes, t), psi0.time + t};
}

namespace detail {

inline void check_index_set(std::span<const Eigen::Index> indices, Eigen::Index dim,
                            const char *what) {
    std::set<Eigen::Index> seen;
    for (auto idx : indices) {
        require(idx >= 0 && idx < dim, std::string("transition_amplitudes: ") + what +
                                           " index " + std::to_string(idx) + " out of range");
        require(seen.insert(idx).second, std::string("transition_amplitudes: duplicate ") + what +
                                             " index " + std::to_string(idx));
    }
}

inline Eigen::MatrixXd select_rows(const Eigen::MatrixXd &m, std::span<const Eigen::Index> rows) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), m.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) out.row(static_cast<Eigen::Index>(r)) = m.row(rows[r]);
    return out;
}

}  // namespace detail

inline AmplitudeMatrix transition_amplitudes(const Eigensystem &es,
                                             std::span<const Eigen::Index> source,
                                             std::span<const Eigen::Index> target, double t,
                                             std::string source_label = "source",
                                             std::string target_label = "target") {
    detail::check_index_set(source, es.dim(), "source");
    detail::check_index_set(target, es.dim(), "target");
    if (t == 0.0) {
        Eigen::MatrixXcd exact = Eigen::MatrixXcd::Zero(Eigen::Index(target.size()), Eigen::Index(source.size()));
        for (std::size_t r = 0; r < target.size(); ++r)
            for (std::size_t c = 0; c < source.size(); ++c)
                if (target[r] == source[c]) exact(Eigen::Index(r), Eigen::Index(c)) = 1.0;
        return AmplitudeMatrix{exact, std::move(source_label), std::move(target_label), t};
    }
    const Eigen::MatrixXcd vt = detail::select_rows(es.vectors, target).cast<cplx>();
    const Eigen::MatrixXcd vs = detail::select_rows(es.vectors, source).cast<cplx>();
    return AmplitudeMatrix{vt * es.phases(t).asDiagonal() * vs.transpose(), std::move(source_label),
                           std::move(target_label), t};
}

/// One constant-Hamiltonian stretch of a schedule.
struct Segment {
    std::reference_wrapper<const Eigensystem> eigensystem;
    double duration;
};

/// Evolves a block of column states through consecutive segments and returns
/// the block at each requested time. A sample time equal to a segment boundary
/// is reported at the end of the earlier segment. Each sample is propagated
/// from the start of its own segment, so long segments do not accumulate
/// step-by-step rounding.
inline std::vector<Eigen::MatrixXcd> piecewise_evolve_block(std::span<const Segment> segments,
                                                            const Eigen::MatrixXcd &initial,
                                                            std::span<const double> sample_times) {
    require(!segments.empty(), "piecewise_evolve: empty segment list");
    double total = 0.0;
    for (const auto &seg : segments) {
        require(seg.duration > 0.0 && std::isfinite(seg.duration),
                "piecewise_evolve: segment durations must be positive");
        require(seg.eigensystem.get().dim() == initial.rows(), "piecewise_evolve: dimension mismatch");
        total += seg.duration;
    }
    require(std::is_sorted(sample_times.begin(), sample_times.end()),
            "piecewise_evolve: sample times must be sorted");
    const double slack = 1e-12 * std::max(1.0, total);
    require(sample_times.empty() || (sample_times.front() >= -slack && sample_times.back() <= total + slack),
            "piecewise_evolve: sample time outside the schedule");

    std::vector<Eigen::MatrixXcd> out;
    out.reserve(sample_times.size());
    std::size_t seg = 0;
    double seg_start = 0.0;
    Eigen::MatrixXcd seg_state = initial;
    for (double t : sample_times) {
        while (seg + 1 < segments.size() && t > seg_start + segments[seg].duration + slack) {
            seg_state = apply_propagator(segments[seg].eigensystem.get(), seg_state, segments[seg].duration);
            seg_start += segments[seg].duration;
            ++seg;
        }
        out.push_back(apply_propagator(segments[seg].eigensystem.get(), seg_state, t - seg_start));
    }
    return out;
}

inline std::vector<StateVector> piecewise_evolve(std::span<const Segment> segments,
                                                 const StateVector &psi0,
                                                 std::span<const double> sample_times) {
    require(std::abs(psi0.norm() - 1.0) <= kNormTolerance, "piecewise_evolve: state is not normalized");
    auto blocks = piecewise_evolve_block(segments, psi0.amplitudes, sample_times);
    std::vector<StateVector> out;
    out.reserve(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        out.push_back(StateVector{blocks[i].col(0), psi0.time + sample_times[i]});
    }
    return out;
}

/// <psi| H |psi>
inline double energy(const Eigen::MatrixXd &h, const StateVector &psi) {
    return (psi.amplitudes.adjoint() * h.cast<cplx>() * psi.amplitudes)(0, 0).real();
}

/// Localized basis state |index>.
inline StateVector basis_state(Eigen::Index dim, Eigen::Index index) {
    require(index >= 0 && index < dim, "basis_state: index out of range");
    StateVector psi{Eigen::VectorXcd::Zero(dim), 0.0};
    psi.amplitudes(index) = 1.0;
    return psi;
}

}  // namespace ccaswitch
