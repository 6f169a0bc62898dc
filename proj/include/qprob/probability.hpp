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
 * @file probability.hpp
 * Born probabilities, composite reduction, Bayesian collapse, joint and
 * conditional probabilities for sensor pairs, the Luder provisional
 * operator, branch decomposition and Heisenberg-picture transport.
 *
 * Probabilities are returned raw (no clamping); clamp only when presenting.
 */

#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "observables.hpp"

namespace qprob {

/// Conditioning on p <= this raises ZeroProbabilityError.
inline constexpr double kZeroProbability = 1e-12;

/// tr{P e}
inline double born(const ProbabilityOperator &p, const Eventuality &e) {
    require_same_space(p.space(), e.space(), "born");
    return trace_product(p.op(), e.projector()).real();
}

/// <psi| e |psi>
inline double born(const Vec &psi, const Eventuality &e) {
    require_same_space(psi.space(), e.space(), "born");
    return e.projector().sandwich(psi, psi).real();
}

inline std::vector<double> born(const ProbabilityOperator &p, const Observable &obs) {
    std::vector<double> out;
    out.reserve(obs.size());
    for (const auto &c : obs.channels()) out.push_back(born(p, c));
    return out;
}

/**
 * Reduced operator on factor `keep` of a pure composite state, assembled as
 * sum_a |psi_a><psi_a| over an orthonormal basis |phi_a> of the remaining
 * factors, where |psi_a> = (<phi_a| (x) I) |psi>.
 */
inline ProbabilityOperator reduce_composite(const Vec &psi, const CompositeSpace &comp,
                                            std::size_t keep, double tol = kDefaultTol) {
    require_same_space(psi.space(), comp.space(), "reduce_composite");
    const double norm_residual = std::abs(psi.components().squaredNorm() - 1.0);
    if (norm_residual > tol) {
        throw ValidationError("state vector", "unit norm", norm_residual, tol);
    }
    const auto [outer, inner] = comp.strides(keep);
    const std::size_t dk = comp.factor(keep).dim();
    const auto d = static_cast<Eigen::Index>(dk);
    Matrix p = Matrix::Zero(d, d);
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t s = 0; s < inner; ++s) {
            ColVector psi_a(d);
            for (std::size_t i = 0; i < dk; ++i) {
                psi_a(static_cast<Eigen::Index>(i)) =
                    psi[(o * dk + i) * inner + s];
            }
            p += psi_a * psi_a.adjoint();
        }
    }
    return ProbabilityOperator(Op(comp.factor(keep), std::move(p)), tol);
}

inline ProbabilityOperator reduce_composite(const ProbabilityOperator &p,
                                            const CompositeSpace &comp, std::size_t keep,
                                            double tol = kDefaultTol) {
    return ProbabilityOperator(comp.partial_trace(p.op(), keep), tol);
}

struct Collapse {
    ProbabilityOperator conditioned; ///< P_[e] = e P e / p
    double probability;              ///< p = tr{P e}
};

/// Bayesian update P -> e P e / tr{P e}.
inline Collapse collapse(const ProbabilityOperator &p, const Eventuality &e,
                         double threshold = kZeroProbability, double tol = kDefaultTol) {
    const double prob = born(p, e);
    if (!(prob > threshold)) {
        throw ZeroProbabilityError("eventuality of rank " + std::to_string(e.rank()), prob,
                                   threshold);
    }
    const Matrix &proj = e.projector().matrix();
    Matrix m = proj * p.matrix() * proj / prob;
    m = 0.5 * (m + m.adjoint()).eval();
    return {ProbabilityOperator(Op(p.space(), std::move(m)), tol), prob};
}

/// P_ij = tr{P e_i f_j} for rows {e} and columns {f}.
struct JointProbabilityMatrix {
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    Eigen::MatrixXd entries;

    std::vector<double> row_marginals() const {
        std::vector<double> out;
        for (Eigen::Index i = 0; i < entries.rows(); ++i) out.push_back(entries.row(i).sum());
        return out;
    }
    std::vector<double> col_marginals() const {
        std::vector<double> out;
        for (Eigen::Index j = 0; j < entries.cols(); ++j) out.push_back(entries.col(j).sum());
        return out;
    }
    double total() const { return entries.sum(); }
};

inline JointProbabilityMatrix joint_matrix(const ProbabilityOperator &p, const Observable &rows,
                                           const Observable &cols, double tol = kDefaultTol) {
    require_same_space(p.space(), rows.space(), "joint_matrix");
    require_valid(rows, tol, "row observable");
    require_valid(cols, tol, "column observable");
    require_commuting(rows, cols, tol);
    JointProbabilityMatrix j{rows.labels(), cols.labels(),
                             Eigen::MatrixXd(static_cast<Eigen::Index>(rows.size()),
                                             static_cast<Eigen::Index>(cols.size()))};
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const Matrix pe = p.matrix() * rows.channel(r).projector().matrix();
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const Matrix &f = cols.channel(c).projector().matrix();
            j.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                (pe.transpose().cwiseProduct(f)).sum().real();
        }
    }
    return j;
}

/// P_[i]{f_j} = tr{P_[i] f_j} for every channel of `target`.
inline std::vector<double> conditional(const ProbabilityOperator &p, const Eventuality &given,
                                       const Observable &target,
                                       double threshold = kZeroProbability,
                                       double tol = kDefaultTol) {
    require_valid(target, tol, "target observable");
    const auto c = collapse(p, given, threshold, tol);
    return born(c.conditioned, target);
}

/// Provisional operator sum_i e_i P e_i.
inline ProbabilityOperator luder(const ProbabilityOperator &p, const Observable &obs,
                                 double tol = kDefaultTol) {
    require_same_space(p.space(), obs.space(), "luder");
    require_valid(obs, tol);
    const auto d = static_cast<Eigen::Index>(p.space().dim());
    Matrix out = Matrix::Zero(d, d);
    for (const auto &c : obs.channels()) {
        const Matrix &e = c.projector().matrix();
        out += e * p.matrix() * e;
    }
    return ProbabilityOperator(Op(p.space(), std::move(out)), tol);
}

struct Branch {
    std::string label;
    double probability = 0.0;                     ///< P_i
    bool zero = false;                            ///< P_i at or below the threshold
    std::optional<ProbabilityOperator> posterior; ///< P_[i], absent when zero
    std::optional<Vec> vector;                    ///< e_i |psi>, pure inputs only
};

struct BranchDecomposition {
    std::vector<Branch> branches;

    double total_probability() const {
        double t = 0.0;
        for (const auto &b : branches) t += b.probability;
        return t;
    }
};

inline BranchDecomposition branch_decompose(const ProbabilityOperator &p, const Observable &obs,
                                            double threshold = kZeroProbability,
                                            double tol = kDefaultTol) {
    require_same_space(p.space(), obs.space(), "branch_decompose");
    require_valid(obs, tol);
    BranchDecomposition out;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        Branch b;
        b.label = obs.labels()[i];
        b.probability = born(p, obs.channel(i));
        b.zero = !(b.probability > threshold);
        if (!b.zero) b.posterior = collapse(p, obs.channel(i), threshold, tol).conditioned;
        out.branches.push_back(std::move(b));
    }
    return out;
}

/// Pure input: branch vectors |psi_i> = e_i |psi>, P_i = <psi_i|psi_i>,
/// P_[i] = |psi_i><psi_i| / P_i.
inline BranchDecomposition branch_decompose(const Vec &psi, const Observable &obs,
                                            double threshold = kZeroProbability,
                                            double tol = kDefaultTol) {
    require_same_space(psi.space(), obs.space(), "branch_decompose");
    require_valid(obs, tol);
    const double norm_residual = std::abs(psi.components().squaredNorm() - 1.0);
    if (norm_residual > tol) {
        throw ValidationError("state vector", "unit norm", norm_residual, tol);
    }
    BranchDecomposition out;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        Branch b;
        b.label = obs.labels()[i];
        Vec v = obs.channel(i).projector().apply(psi);
        b.probability = v.components().squaredNorm();
        b.zero = !(b.probability > threshold);
        if (!b.zero) {
            Matrix m = v.components() * v.components().adjoint() / b.probability;
            b.posterior = ProbabilityOperator(Op(psi.space(), std::move(m)), tol);
        }
        b.vector = std::move(v);
        out.branches.push_back(std::move(b));
    }
    return out;
}

namespace detail {
inline void require_unitary(const Op &u, double tol) {
    const auto r = structure_check(u, StructureKind::unitary, tol);
    if (!r.passed) throw ValidationError("transport operator", "unitary", r.residual, tol);
}
} // namespace detail

/// Heisenberg-picture eventuality U^dagger e U.
inline Eventuality heisenberg_transport(const Eventuality &e, const Op &u,
                                        double tol = kDefaultTol) {
    require_same_space(e.space(), u.space(), "heisenberg_transport");
    detail::require_unitary(u, tol);
    // U^dagger maps the basis of e onto an orthonormal basis of the image
    return Eventuality::from_orthonormal(e.space(), u.matrix().adjoint() * e.basis());
}

inline Observable heisenberg_transport(const Observable &obs, const Op &u,
                                       double tol = kDefaultTol) {
    std::vector<Eventuality> channels;
    for (const auto &c : obs.channels()) channels.push_back(heisenberg_transport(c, u, tol));
    return {obs.space(), std::move(channels), obs.labels()};
}

/// Schroedinger-picture evolution U P U^dagger.
inline ProbabilityOperator evolve(const ProbabilityOperator &p, const Op &u,
                                  double tol = kDefaultTol) {
    require_same_space(p.space(), u.space(), "evolve");
    detail::require_unitary(u, tol);
    Matrix m = u.matrix() * p.matrix() * u.matrix().adjoint();
    m = 0.5 * (m + m.adjoint()).eval();
    return ProbabilityOperator(Op(p.space(), std::move(m)), tol);
}

struct CorrelationReport {
    bool counts_match = false;
    double off_diagonal_mass = 0.0;      ///< sum_{i != j} P_ij
    double conditional_deviation = 0.0;  ///< max |P_[i]{f_j} - delta_ij|
    bool adequately_correlated = false;
    JointProbabilityMatrix joint;
};

/**
 * Sensor adequacy diagnostic: equal channel counts, and both the
 * off-diagonal joint mass and the conditional matrix's deviation from the
 * identity at most tol. Rows whose marginal is at or below the zero
 * threshold do not contribute to the conditional deviation.
 */
inline CorrelationReport correlation_check(const ProbabilityOperator &p, const Observable &rows,
                                           const Observable &cols, double tol,
                                           double structure_tol = kDefaultTol) {
    CorrelationReport r;
    r.joint = joint_matrix(p, rows, cols, structure_tol);
    r.counts_match = rows.size() == cols.size();
    const auto &m = r.joint.entries;
    const auto marginals = r.joint.row_marginals();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const auto ui = static_cast<std::size_t>(i);
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (i != j) r.off_diagonal_mass += m(i, j);
            if (marginals[ui] > kZeroProbability) {
                const double cond = m(i, j) / marginals[ui];
                r.conditional_deviation =
                    std::max(r.conditional_deviation, std::abs(cond - (i == j ? 1.0 : 0.0)));
            }
        }
    }
    r.adequately_correlated =
        r.counts_match && r.off_diagonal_mass <= tol && r.conditional_deviation <= tol;
    return r;
}

} // namespace qprob
