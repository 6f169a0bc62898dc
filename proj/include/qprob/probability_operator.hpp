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

#pragma once

#include <cmath>
#include <span>
#include <string>

#include "hilbert.hpp"

namespace qprob {

/// Residuals of the three probability-operator invariants.
struct ProbabilityResiduals {
    double hermitian;      ///< |P - P^dagger|
    double trace;          ///< |tr P - 1|
    double min_eigenvalue; ///< smallest eigenvalue of the Hermitian part
};

inline ProbabilityResiduals inspect_probability_operator(const Op &m) {
    return {hermitian_residual(m.matrix()), std::abs(m.trace() - Complex{1.0}),
            min_hermitian_eigenvalue(m.matrix())};
}

/**
 * Hermitian, positive-semidefinite, unit-trace operator. A-priori,
 * provisional and a-posteriori operators share this one type.
 */
class ProbabilityOperator {
  public:
    explicit ProbabilityOperator(Op m, double tol = kDefaultTol) : op_(std::move(m)) {
        const auto r = inspect_probability_operator(op_);
        if (r.hermitian > tol) {
            throw ValidationError("probability operator", "hermitian", r.hermitian, tol);
        }
        if (r.trace > tol) {
            throw ValidationError("probability operator", "unit trace", r.trace, tol);
        }
        if (r.min_eigenvalue < -tol) {
            throw ValidationError("probability operator", "positive semidefinite",
                                  -r.min_eigenvalue, tol);
        }
    }

    /// |psi><psi| for a unit vector.
    static ProbabilityOperator pure(const Vec &psi, double tol = kDefaultTol) {
        const double norm_residual = std::abs(psi.components().squaredNorm() - 1.0);
        if (norm_residual > tol) {
            throw ValidationError("state vector", "unit norm", norm_residual, tol);
        }
        return ProbabilityOperator(Op::outer(psi, psi), tol);
    }

    static ProbabilityOperator diagonal(const HilbertSpace &space,
                                        std::span<const double> weights,
                                        double tol = kDefaultTol) {
        return ProbabilityOperator(Op::diagonal(space, weights), tol);
    }

    /// I / N
    static ProbabilityOperator maximally_mixed(const HilbertSpace &space) {
        return ProbabilityOperator(
            Complex{1.0 / static_cast<double>(space.dim())} * Op::identity(space));
    }

    const HilbertSpace &space() const noexcept { return op_.space(); }
    const Op &op() const noexcept { return op_; }
    const Matrix &matrix() const noexcept { return op_.matrix(); }

  private:
    Op op_;
};

} // namespace qprob
