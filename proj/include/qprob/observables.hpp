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
 * @file observables.hpp
 * Qualitative observables (complete orthogonal families of eventualities),
 * quantitative observables, spectral construction, and lifting/conjoining
 * across tensor factors.
 */

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lattice.hpp"
#include "probability_operator.hpp"

namespace qprob {

/// Default eigenvalue clustering tolerance for spectral_observable.
inline constexpr double kSpectralTol = 1e-8;

/**
 * A family of eventualities meant to be mutually orthogonal and complete.
 * Construction only checks shape (same space, one label per channel);
 * validate() reports the numeric invariants and engine entry points call
 * require_valid().
 */
class Observable {
  public:
    Observable(HilbertSpace space, std::vector<Eventuality> channels,
               std::vector<std::string> labels = {})
        : space_(std::move(space)), channels_(std::move(channels)),
          labels_(std::move(labels)) {
        for (const auto &c : channels_) require_same_space(space_, c.space(), "observable");
        if (labels_.empty()) {
            for (std::size_t i = 0; i < channels_.size(); ++i) {
                labels_.push_back("e" + std::to_string(i + 1));
            }
        }
        if (labels_.size() != channels_.size()) {
            throw StructuralError("observable: one label per channel required");
        }
    }

    /// Channels |0>, |1>, ... of the computational basis.
    static Observable computational(const HilbertSpace &space,
                                    std::vector<std::string> labels = {}) {
        std::vector<Eventuality> channels;
        for (std::size_t i = 0; i < space.dim(); ++i) {
            const std::size_t idx[] = {i};
            channels.push_back(Eventuality::of_basis_states(space, idx));
        }
        return {space, std::move(channels), std::move(labels)};
    }

    const HilbertSpace &space() const noexcept { return space_; }
    const std::vector<Eventuality> &channels() const noexcept { return channels_; }
    const Eventuality &channel(std::size_t i) const { return channels_.at(i); }
    const std::vector<std::string> &labels() const noexcept { return labels_; }
    std::size_t size() const noexcept { return channels_.size(); }

  private:
    HilbertSpace space_;
    std::vector<Eventuality> channels_;
    std::vector<std::string> labels_;
};

struct ObservableReport {
    bool passed = false;
    double orthogonality_residual = 0.0; ///< max_{i<j} |e_i e_j|
    double completeness_residual = 0.0;  ///< |sum_i e_i - I|
    std::optional<std::pair<std::size_t, std::size_t>> worst_pair;
    std::optional<std::size_t> null_channel;
    std::string message;
};

inline ObservableReport validate(const Observable &obs, double tol = kDefaultTol) {
    ObservableReport r;
    const auto d = static_cast<Eigen::Index>(obs.space().dim());
    Matrix sum = Matrix::Zero(d, d);
    for (std::size_t i = 0; i < obs.size(); ++i) {
        const Matrix &pi = obs.channel(i).projector().matrix();
        if (obs.channel(i).is_null() && !r.null_channel) r.null_channel = i;
        sum += pi;
        for (std::size_t j = i + 1; j < obs.size(); ++j) {
            const double res = max_abs(pi * obs.channel(j).projector().matrix());
            if (!r.worst_pair || res > r.orthogonality_residual) {
                r.orthogonality_residual = res;
                r.worst_pair = std::pair{i, j};
            }
        }
    }
    r.completeness_residual = max_abs(sum - Matrix::Identity(d, d));
    const bool ortho_ok = r.orthogonality_residual <= tol;
    const bool complete_ok = r.completeness_residual <= tol;
    r.passed = ortho_ok && complete_ok && !r.null_channel && obs.size() > 0;
    if (r.null_channel) {
        r.message = "channel '" + obs.labels()[*r.null_channel] + "' is the null eventuality";
    } else if (obs.size() == 0) {
        r.message = "observable has no channels";
    } else if (!ortho_ok) {
        r.message = "channels '" + obs.labels()[r.worst_pair->first] + "' and '" +
                    obs.labels()[r.worst_pair->second] + "' are not orthogonal";
    } else if (!complete_ok) {
        r.message = "channels do not sum to the identity (completeness)";
    }
    return r;
}

/// Throws ValidationError naming the first violated invariant.
inline void require_valid(const Observable &obs, double tol = kDefaultTol,
                          const std::string &name = "observable") {
    const auto r = validate(obs, tol);
    if (r.passed) return;
    if (r.null_channel || obs.size() == 0) {
        throw ValidationError(name, "no null channel", 0.0, tol);
    }
    if (r.orthogonality_residual > tol) {
        throw ValidationError(name + " (" + r.message + ")", "orthogonality e_i e_j = 0",
                              r.orthogonality_residual, tol);
    }
    throw ValidationError(name, "completeness sum e_i = I", r.completeness_residual, tol);
}

/// A qualitative observable decorated with pairwise distinct real values.
class QuantitativeObservable {
  public:
    QuantitativeObservable(Observable base, std::vector<double> values)
        : base_(std::move(base)), values_(std::move(values)) {
        if (values_.size() != base_.size()) {
            throw StructuralError("quantitative observable: one value per channel required");
        }
        for (std::size_t i = 0; i < values_.size(); ++i) {
            for (std::size_t j = i + 1; j < values_.size(); ++j) {
                if (values_[i] == values_[j]) {
                    throw ValidationError("quantitative observable",
                                          "non-degenerate values E_i != E_j", 0.0, 0.0);
                }
            }
        }
    }

    const Observable &base() const noexcept { return base_; }
    const std::vector<double> &values() const noexcept { return values_; }

  private:
    Observable base_;
    std::vector<double> values_;
};

/// E = sum_i E_i e_i
inline Op build_operator(const QuantitativeObservable &q, double tol = kDefaultTol) {
    require_valid(q.base(), tol);
    Op e = Op::zero(q.base().space());
    for (std::size_t i = 0; i < q.values().size(); ++i) {
        e = e + Complex{q.values()[i]} * q.base().channel(i).projector();
    }
    return e;
}

/// <E> = tr{P E}
inline double expectation(const QuantitativeObservable &q, const ProbabilityOperator &p,
                          double tol = kDefaultTol) {
    require_same_space(q.base().space(), p.space(), "expectation");
    return trace_product(p.op(), build_operator(q, tol)).real();
}

/**
 * Decompose a Hermitian operator into its eigenspaces. Eigenvalues closer
 * than tol to the first member of their cluster share a channel; channels
 * are ordered by descending eigenvalue and each carries its cluster mean.
 */
inline QuantitativeObservable spectral_observable(const Op &m, double tol = kSpectralTol) {
    const double herm = hermitian_residual(m.matrix());
    if (herm > tol) {
        throw ValidationError("spectral decomposition input", "hermitian", herm, tol);
    }
    const Matrix h = 0.5 * (m.matrix() + m.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    const auto &evals = solver.eigenvalues(); // ascending
    const Eigen::Index n = evals.size();

    std::vector<Eventuality> channels;
    std::vector<double> values;
    Eigen::Index hi = n - 1;
    while (hi >= 0) {
        Eigen::Index lo = hi;
        while (lo - 1 >= 0 && evals(hi) - evals(lo - 1) <= tol) --lo;
        const Eigen::Index count = hi - lo + 1;
        channels.push_back(Eventuality::from_orthonormal(
            m.space(), solver.eigenvectors().middleCols(lo, count)));
        values.push_back(evals.segment(lo, count).mean());
        hi = lo - 1;
    }
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < channels.size(); ++i) {
        labels.push_back("E" + std::to_string(i + 1));
    }
    return {Observable(m.space(), std::move(channels), std::move(labels)), std::move(values)};
}

/// Lift a factor-local eventuality e_i to e_i (x) I{rest}.
inline Eventuality lift(const Eventuality &e, const CompositeSpace &comp, std::size_t k) {
    require_same_space(e.space(), comp.factor(k), "lift");
    return Eventuality::from_orthonormal(comp.space(), comp.lift_columns(e.basis(), k));
}

inline Observable lift(const Observable &obs, const CompositeSpace &comp, std::size_t k) {
    std::vector<Eventuality> channels;
    channels.reserve(obs.size());
    for (const auto &c : obs.channels()) channels.push_back(lift(c, comp, k));
    return {comp.space(), std::move(channels), obs.labels()};
}

/// Conjoint observable {e} (x) {f}; `index[c]` is the (i, j) of channel c.
struct ConjointObservable {
    Observable observable;
    std::vector<std::pair<std::size_t, std::size_t>> index;
};

/// Throws ValidationError naming the first pair whose commutator exceeds tol.
inline void require_commuting(const Observable &a, const Observable &b, double tol) {
    require_same_space(a.space(), b.space(), "commuting observables");
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            const double res = commutator_residual(a.channel(i).projector(),
                                                   b.channel(j).projector());
            if (res > tol) {
                throw ValidationError("channels '" + a.labels()[i] + "' and '" +
                                          b.labels()[j] + "'",
                                      "commuting projectors [e_i, f_j] = 0", res, tol);
            }
        }
    }
}

/**
 * Channels are meet(e_i, f_j) in row-major (i, j) order. Null intersections
 * (possible only when both inputs act on the same factor) are omitted and
 * absent from `index`.
 */
inline ConjointObservable conjoin(const Observable &a, const Observable &b,
                                  double tol = kDefaultTol) {
    require_commuting(a, b, tol);
    std::vector<Eventuality> channels;
    std::vector<std::string> labels;
    std::vector<std::pair<std::size_t, std::size_t>> index;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            auto c = meet(a.channel(i), b.channel(j), tol);
            if (c.is_null()) continue;
            channels.push_back(std::move(c));
            labels.push_back(a.labels()[i] + "&" + b.labels()[j]);
            index.emplace_back(i, j);
        }
    }
    return {Observable(a.space(), std::move(channels), std::move(labels)), std::move(index)};
}

} // namespace qprob
