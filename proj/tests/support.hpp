// Copyright 2026 The qprob Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Test-only random generators (fixed seeds) and independent oracles. The
// oracles deliberately avoid the library's own code paths: they work on
// raw index arithmetic or on a different decomposition.

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qprob/qprob.hpp"

namespace qprob::testing {

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t salt = 0) { return Rng(0x5eed'2026ULL ^ salt); }

inline std::size_t uniform_int(Rng &rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline double uniform(Rng &rng, double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Matrix random_matrix(Rng &rng, std::size_t rows, std::size_t cols) {
    std::normal_distribution<double> n;
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = Complex(n(rng), n(rng));
    }
    return m;
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the R-diagonal phases removed.
inline Matrix random_unitary(Rng &rng, std::size_t d) {
    const Matrix g = random_matrix(rng, d, d);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < q.cols(); ++k) {
        const Complex diag = r(k, k);
        if (std::abs(diag) > 0.0) q.col(k) *= diag / std::abs(diag);
    }
    return q;
}

/// Mixed state A A^dagger / tr, with random rank in [1, d].
inline ProbabilityOperator random_state(Rng &rng, const HilbertSpace &space) {
    const auto d = space.dim();
    const Matrix a = random_matrix(rng, d, uniform_int(rng, 1, d));
    Matrix p = a * a.adjoint();
    p /= p.trace().real();
    p = 0.5 * (p + p.adjoint()).eval();
    return ProbabilityOperator(Op(space, p));
}

inline Vec random_pure(Rng &rng, const HilbertSpace &space) {
    ColVector v = random_matrix(rng, space.dim(), 1).col(0);
    return Vec(space, v / v.norm());
}

/// Orthonormal columns spanning a random r-dimensional subspace.
inline Matrix random_frame(Rng &rng, std::size_t d, std::size_t r) {
    return random_unitary(rng, d).leftCols(static_cast<Eigen::Index>(r));
}

inline Eventuality random_eventuality(Rng &rng, const HilbertSpace &space, std::size_t rank) {
    return Eventuality::span(space, random_frame(rng, space.dim(), rank));
}

/// A random observable together with the orthonormal frames that generated
/// each channel (so oracles can rebuild projectors independently).
struct RandomObservable {
    Observable observable;
    std::vector<Matrix> frames;
};

inline RandomObservable random_observable(Rng &rng, const HilbertSpace &space,
                                          std::size_t channels) {
    const auto d = space.dim();
    const Matrix u = random_unitary(rng, d);
    // cut points: every channel gets at least one column
    std::vector<std::size_t> cuts(d - 1);
    std::iota(cuts.begin(), cuts.end(), 1);
    std::shuffle(cuts.begin(), cuts.end(), rng);
    cuts.resize(channels - 1);
    std::sort(cuts.begin(), cuts.end());
    cuts.insert(cuts.begin(), 0);
    cuts.push_back(d);
    std::vector<Eventuality> events;
    std::vector<Matrix> frames;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        Matrix f = u.middleCols(static_cast<Eigen::Index>(cuts[k]),
                                static_cast<Eigen::Index>(cuts[k + 1] - cuts[k]));
        events.push_back(Eventuality::span(space, f));
        frames.push_back(std::move(f));
    }
    return {Observable(space, std::move(events)), std::move(frames)};
}

/// Dyadic probability vector: every weight is k / 2^bits, so sums are exact.
inline std::vector<double> dyadic_measure(Rng &rng, std::size_t n, int bits = 10) {
    const std::size_t total = std::size_t{1} << bits;
    std::vector<std::size_t> cuts;
    for (std::size_t i = 0; i + 1 < n; ++i) cuts.push_back(uniform_int(rng, 0, total));
    cuts.push_back(0);
    cuts.push_back(total);
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> w;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        w.push_back(std::ldexp(static_cast<double>(cuts[i + 1] - cuts[i]), -bits));
    }
    return w;
}

inline std::vector<double> random_distribution(Rng &rng, std::size_t n) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> p(n);
    double s = 0.0;
    for (auto &x : p) s += (x = e(rng));
    for (auto &x : p) x /= s;
    return p;
}

// ---- oracles -------------------------------------------------------------

/// Kronecker product entry by entry: (A (x) B)[(i,k),(j,l)] = A[i,j] B[k,l].
inline Matrix kron_oracle(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            for (Eigen::Index k = 0; k < b.rows(); ++k)
                for (Eigen::Index l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

/// Partial trace by explicit digit decomposition of every (row, col) pair:
/// an entry contributes iff all traced-out digits agree.
inline Matrix partial_trace_oracle(const Matrix &m, const std::vector<std::size_t> &dims,
                                   std::size_t keep) {
    auto digits = [&](std::size_t n) {
        std::vector<std::size_t> out(dims.size());
        for (std::size_t k = dims.size(); k-- > 0;) {
            out[k] = n % dims[k];
            n /= dims[k];
        }
        return out;
    };
    const auto dk = static_cast<Eigen::Index>(dims[keep]);
    Matrix out = Matrix::Zero(dk, dk);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        const auto dr = digits(static_cast<std::size_t>(r));
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            const auto dc = digits(static_cast<std::size_t>(c));
            bool match = true;
            for (std::size_t k = 0; k < dims.size(); ++k) {
                if (k != keep && dr[k] != dc[k]) match = false;
            }
            if (match) {
                out(static_cast<Eigen::Index>(dr[keep]), static_cast<Eigen::Index>(dc[keep])) +=
                    m(r, c);
            }
        }
    }
    return out;
}

/// sum_i e_i P e_i with each e_i rebuilt from its generating frame as
/// sum_a |a><a|, applied through explicit loops.
inline Matrix luder_oracle(const Matrix &p, const std::vector<Matrix> &frames) {
    const Eigen::Index d = p.rows();
    Matrix out = Matrix::Zero(d, d);
    for (const auto &f : frames) {
        Matrix e = Matrix::Zero(d, d);
        for (Eigen::Index a = 0; a < f.cols(); ++a)
            for (Eigen::Index r = 0; r < d; ++r)
                for (Eigen::Index c = 0; c < d; ++c) e(r, c) += f(r, a) * std::conj(f(c, a));
        for (Eigen::Index r = 0; r < d; ++r)
            for (Eigen::Index c = 0; c < d; ++c)
                for (Eigen::Index k = 0; k < d; ++k)
                    for (Eigen::Index l = 0; l < d; ++l) out(r, c) += e(r, k) * p(k, l) * e(l, c);
    }
    return out;
}

/// Meet through De Morgan: not(not a or not b).
inline Eventuality meet_de_morgan(const Eventuality &a, const Eventuality &b) {
    return orthocomplement(join(orthocomplement(a), orthocomplement(b)));
}

/// Meet as the null space of the stacked matrix [I - P1; I - P2] via SVD.
inline Eventuality meet_svd(const Eventuality &a, const Eventuality &b, double tol = 1e-8) {
    const auto d = static_cast<Eigen::Index>(a.space().dim());
    Matrix stacked(2 * d, d);
    stacked << Matrix::Identity(d, d) - a.projector().matrix(),
        Matrix::Identity(d, d) - b.projector().matrix();
    Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeFullV);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < d; ++i) {
        if (svd.singularValues()(i) <= tol) keep.push_back(i);
    }
    Matrix v(d, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) {
        v.col(static_cast<Eigen::Index>(k)) = svd.matrixV().col(keep[k]);
    }
    return Eventuality::from_orthonormal(a.space(), v);
}

inline double projector_distance(const Eventuality &a, const Eventuality &b) {
    return max_abs(a.projector().matrix() - b.projector().matrix());
}

} // namespace qprob::testing
