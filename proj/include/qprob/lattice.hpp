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

/**
 * @file lattice.hpp
 * Eventualities as Hilbert subspaces: construction, meet, join,
 * orthocomplement and the partial order.
 *
 * Every Eventuality stores a canonical orthonormal basis that depends only
 * on its projector: pivoted Gram-Schmidt over the projector's columns,
 * largest residual first with ties going to the lowest column index, and
 * each vector's phase fixed so that its largest component is real positive.
 */

#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "hilbert.hpp"

namespace qprob {

namespace detail {

/// Rotate v so that its largest-magnitude entry (lowest index on ties) is
/// real and positive.
inline void fix_phase(Eigen::Ref<ColVector> v) {
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        // 1e-12 slack so that numerically tied entries keep the lowest index
        if (std::abs(v(i)) > best_abs + 1e-12) {
            best_abs = std::abs(v(i));
            best = i;
        }
    }
    if (best_abs > 0.0) v *= std::conj(v(best)) / std::abs(v(best));
}

/**
 * Pivoted modified Gram-Schmidt. Columns whose residual norm drops below
 * tol are discarded. Stops early once max_rank vectors have been produced.
 */
inline Matrix pivoted_orthonormalize(const Matrix &vectors, double tol,
                                     std::size_t max_rank =
                                         std::numeric_limits<std::size_t>::max()) {
    Matrix work = vectors;
    const Eigen::Index n = work.cols();
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    std::vector<ColVector> q;
    while (q.size() < max_rank) {
        Eigen::Index pivot = -1;
        double pivot_norm = 0.0;
        for (Eigen::Index c = 0; c < n; ++c) {
            if (used[static_cast<std::size_t>(c)]) continue;
            const double nrm = work.col(c).norm();
            // 1e-9 slack so that numerically tied columns keep the lowest index
            if (pivot < 0 ? nrm > 0.0 : nrm > pivot_norm + 1e-9) {
                pivot_norm = nrm;
                pivot = c;
            }
        }
        if (pivot < 0 || pivot_norm < tol) break;
        used[static_cast<std::size_t>(pivot)] = true;
        ColVector v = work.col(pivot);
        // second pass against the accepted vectors
        for (const auto &u : q) v -= u * u.dot(v);
        const double nrm = v.norm();
        if (nrm < tol) continue;
        v /= nrm;
        for (Eigen::Index c = 0; c < n; ++c) {
            if (!used[static_cast<std::size_t>(c)]) {
                work.col(c) -= v * v.dot(work.col(c));
            }
        }
        q.push_back(std::move(v));
    }
    Matrix out(vectors.rows(), static_cast<Eigen::Index>(q.size()));
    for (std::size_t k = 0; k < q.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = q[k];
    return out;
}

inline Matrix projector_of(const Matrix &orthonormal) {
    return orthonormal * orthonormal.adjoint();
}

/// Canonical basis of the range of a projector of known rank.
inline Matrix canonical_basis(const Matrix &projector, std::size_t rank) {
    if (rank == 0) return Matrix(projector.rows(), 0);
    Matrix basis = pivoted_orthonormalize(projector, 0.0, rank);
    for (Eigen::Index k = 0; k < basis.cols(); ++k) fix_phase(basis.col(k));
    return basis;
}

} // namespace detail

/**
 * An eventuality e: a subspace of a finite-dimensional Hilbert space
 * together with its orthogonal projector. Rank 0 is the null eventuality,
 * rank = dim the certain eventuality.
 */
class Eventuality {
  public:
    /// Span of the given column vectors; near-zero residuals (< tol) drop out.
    static Eventuality span(const HilbertSpace &space, const Matrix &columns,
                            double tol = kDefaultTol) {
        if (static_cast<std::size_t>(columns.rows()) != space.dim() && columns.cols() > 0) {
            throw StructuralError("spanning vectors do not lie in '" + space.label() + "'");
        }
        const Matrix q = detail::pivoted_orthonormalize(columns, tol);
        return from_orthonormal(space, q);
    }

    static Eventuality span(const HilbertSpace &space, std::span<const Vec> vectors,
                            double tol = kDefaultTol) {
        Matrix cols(static_cast<Eigen::Index>(space.dim()),
                    static_cast<Eigen::Index>(vectors.size()));
        for (std::size_t k = 0; k < vectors.size(); ++k) {
            require_same_space(space, vectors[k].space(), "eventuality span");
            cols.col(static_cast<Eigen::Index>(k)) = vectors[k].components();
        }
        return span(space, cols, tol);
    }

    /// Span of computational basis states |i> for i in indices.
    static Eventuality of_basis_states(const HilbertSpace &space,
                                       std::span<const std::size_t> indices) {
        std::vector<Vec> vs;
        for (auto i : indices) vs.push_back(Vec::basis(space, i));
        return span(space, vs);
    }

    /// From a projector; rejected with its residual if it is not one.
    static Eventuality from_projector(const Op &projector, double tol = kDefaultTol) {
        const auto report = structure_check(projector, StructureKind::projector, tol);
        if (!report.passed) {
            throw ValidationError("eventuality projector", "e = e^2 = e^dagger",
                                  report.residual, tol);
        }
        const Matrix h = 0.5 * (projector.matrix() + projector.matrix().adjoint());
        Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
        std::vector<Eigen::Index> keep;
        for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
            if (std::abs(solver.eigenvalues()(i) - 1.0) <= 0.5) keep.push_back(i);
        }
        Matrix vecs(h.rows(), static_cast<Eigen::Index>(keep.size()));
        for (std::size_t k = 0; k < keep.size(); ++k) {
            vecs.col(static_cast<Eigen::Index>(k)) = solver.eigenvectors().col(keep[k]);
        }
        return from_orthonormal(projector.space(), vecs);
    }

    /// Columns must already be orthonormal.
    static Eventuality from_orthonormal(const HilbertSpace &space, const Matrix &q) {
        const Matrix p = q.cols() == 0
                             ? Matrix::Zero(static_cast<Eigen::Index>(space.dim()),
                                            static_cast<Eigen::Index>(space.dim()))
                             : detail::projector_of(q);
        const auto rank = static_cast<std::size_t>(q.cols());
        Matrix basis = detail::canonical_basis(p, rank);
        return Eventuality(space, std::move(basis));
    }

    static Eventuality null(const HilbertSpace &space) {
        return Eventuality(space, Matrix(static_cast<Eigen::Index>(space.dim()), 0));
    }
    static Eventuality certain(const HilbertSpace &space) {
        const auto d = static_cast<Eigen::Index>(space.dim());
        return Eventuality(space, Matrix::Identity(d, d));
    }

    const HilbertSpace &space() const noexcept { return projector_.space(); }
    const Matrix &basis() const noexcept { return basis_; }
    Vec basis_vector(std::size_t k) const {
        return {space(), basis_.col(static_cast<Eigen::Index>(k))};
    }
    std::size_t rank() const noexcept { return static_cast<std::size_t>(basis_.cols()); }
    const Op &projector() const noexcept { return projector_; }
    bool is_null() const noexcept { return rank() == 0; }
    bool is_certain() const noexcept { return rank() == space().dim(); }

  private:
    Eventuality(const HilbertSpace &space, Matrix basis)
        : basis_(std::move(basis)),
          projector_(space, basis_.cols() == 0
                                ? Matrix(Matrix::Zero(static_cast<Eigen::Index>(space.dim()),
                                                      static_cast<Eigen::Index>(space.dim())))
                                : Matrix(detail::projector_of(basis_))) {}

    Matrix basis_;
    Op projector_;
};

/// Projector equality within tol.
inline bool same_eventuality(const Eventuality &a, const Eventuality &b,
                             double tol = kDefaultTol) {
    require_same_space(a.space(), b.space(), "eventuality comparison");
    return max_abs(a.projector().matrix() - b.projector().matrix()) <= tol;
}

/// Subspace spanned by both (e1 (+) e2).
inline Eventuality join(const Eventuality &a, const Eventuality &b,
                        double tol = kDefaultTol) {
    require_same_space(a.space(), b.space(), "join");
    Matrix cols(a.basis().rows(), a.basis().cols() + b.basis().cols());
    cols << a.basis(), b.basis();
    return Eventuality::span(a.space(), cols, tol);
}

/**
 * Subspace intersection e1 n e2, computed directly as the null space of
 * (I - P1) + (I - P2): a vector is annihilated by this positive operator
 * iff it is fixed by both projectors.
 */
inline Eventuality meet(const Eventuality &a, const Eventuality &b,
                        double tol = kDefaultTol) {
    require_same_space(a.space(), b.space(), "meet");
    if (a.is_null() || b.is_null()) return Eventuality::null(a.space());
    const auto d = static_cast<Eigen::Index>(a.space().dim());
    Matrix m = 2.0 * Matrix::Identity(d, d) - a.projector().matrix() - b.projector().matrix();
    m = 0.5 * (m + m.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < d; ++i) {
        if (solver.eigenvalues()(i) <= tol) keep.push_back(i);
    }
    Matrix vecs(d, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) {
        vecs.col(static_cast<Eigen::Index>(k)) = solver.eigenvectors().col(keep[k]);
    }
    return Eventuality::from_orthonormal(a.space(), vecs);
}

inline Eventuality orthocomplement(const Eventuality &e) {
    const auto d = static_cast<Eigen::Index>(e.space().dim());
    const Matrix p = Matrix::Identity(d, d) - e.projector().matrix();
    const std::size_t rank = e.space().dim() - e.rank();
    return Eventuality::from_orthonormal(e.space(), detail::canonical_basis(p, rank));
}

/// e1 <= e2 iff P2 P1 = P1 within tol.
inline bool leq(const Eventuality &a, const Eventuality &b, double tol = kDefaultTol) {
    require_same_space(a.space(), b.space(), "leq");
    return max_abs(b.projector().matrix() * a.projector().matrix() -
                   a.projector().matrix()) <= tol;
}

/// Sufficient exclusivity condition: e1 e2 = 0 within tol.
inline bool orthogonal(const Eventuality &a, const Eventuality &b, double tol = kDefaultTol) {
    require_same_space(a.space(), b.space(), "orthogonality");
    return max_abs(a.projector().matrix() * b.projector().matrix()) <= tol;
}

} // namespace qprob
