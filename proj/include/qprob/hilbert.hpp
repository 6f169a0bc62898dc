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
 * @file hilbert.hpp
 * Finite-dimensional complex vectors and operators, tensor products,
 * partial traces and toleranced structural predicates.
 *
 * Composite indexing convention: for factors (F_0, ..., F_{n-1}) the
 * composite basis index is row-major in the factor order, i.e. F_0 is the
 * slowest-varying index and F_{n-1} the fastest. Every composite operation in
 * the library derives from this one convention.
 */

#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"

namespace qprob {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using ColVector = Eigen::VectorXcd;

/// Default rank / structure tolerance.
inline constexpr double kDefaultTol = 1e-10;

/// Max absolute entry (Chebyshev norm); the residual norm used throughout.
inline double max_abs(const Matrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

class HilbertSpace {
  public:
    explicit HilbertSpace(std::size_t dim, std::string label = {})
        : dim_(dim), label_(std::move(label)) {
        if (dim_ < 1) {
            throw StructuralError("Hilbert space '" + label_ +
                                  "' must have dimension >= 1");
        }
    }

    std::size_t dim() const noexcept { return dim_; }
    const std::string &label() const noexcept { return label_; }

    friend bool operator==(const HilbertSpace &, const HilbertSpace &) = default;

  private:
    std::size_t dim_;
    std::string label_;
};

inline void require_same_space(const HilbertSpace &a, const HilbertSpace &b,
                               const char *context) {
    if (!(a == b)) {
        throw StructuralError(std::string(context) + ": space mismatch ('" +
                              a.label() + "' dim " + std::to_string(a.dim()) +
                              " vs '" + b.label() + "' dim " +
                              std::to_string(b.dim()) + ")");
    }
}

class Vec {
  public:
    Vec(HilbertSpace space, ColVector components)
        : space_(std::move(space)), data_(std::move(components)) {
        if (static_cast<std::size_t>(data_.size()) != space_.dim()) {
            throw StructuralError("vector length " +
                                  std::to_string(data_.size()) +
                                  " does not match dimension of '" +
                                  space_.label() + "'");
        }
    }

    /// Computational basis vector |index>.
    static Vec basis(const HilbertSpace &space, std::size_t index) {
        if (index >= space.dim()) {
            throw StructuralError("basis index out of range for '" +
                                  space.label() + "'");
        }
        ColVector v = ColVector::Zero(static_cast<Eigen::Index>(space.dim()));
        v(static_cast<Eigen::Index>(index)) = 1.0;
        return {space, std::move(v)};
    }

    const HilbertSpace &space() const noexcept { return space_; }
    const ColVector &components() const noexcept { return data_; }
    std::size_t size() const noexcept { return space_.dim(); }
    Complex operator[](std::size_t i) const {
        return data_(static_cast<Eigen::Index>(i));
    }

    double norm() const { return data_.norm(); }
    Complex inner(const Vec &other) const {
        require_same_space(space_, other.space_, "inner product");
        return data_.dot(other.data_);
    }
    Vec normalized() const {
        const double n = norm();
        if (n == 0.0) {
            throw StructuralError("cannot normalize the zero vector");
        }
        return {space_, data_ / n};
    }

    friend Vec operator+(const Vec &a, const Vec &b) {
        require_same_space(a.space_, b.space_, "vector sum");
        return {a.space_, a.data_ + b.data_};
    }
    friend Vec operator*(Complex s, const Vec &v) {
        return {v.space_, s * v.data_};
    }

  private:
    HilbertSpace space_;
    ColVector data_;
};

class Op {
  public:
    Op(HilbertSpace space, Matrix entries)
        : space_(std::move(space)), data_(std::move(entries)) {
        const auto d = static_cast<Eigen::Index>(space_.dim());
        if (data_.rows() != d || data_.cols() != d) {
            throw StructuralError("operator shape " +
                                  std::to_string(data_.rows()) + "x" +
                                  std::to_string(data_.cols()) +
                                  " does not match dimension of '" +
                                  space_.label() + "'");
        }
    }

    static Op identity(const HilbertSpace &space) {
        const auto d = static_cast<Eigen::Index>(space.dim());
        return {space, Matrix::Identity(d, d)};
    }
    static Op zero(const HilbertSpace &space) {
        const auto d = static_cast<Eigen::Index>(space.dim());
        return {space, Matrix::Zero(d, d)};
    }
    /// |ket><bra|
    static Op outer(const Vec &ket, const Vec &bra) {
        require_same_space(ket.space(), bra.space(), "outer product");
        return {ket.space(), ket.components() * bra.components().adjoint()};
    }
    static Op diagonal(const HilbertSpace &space, std::span<const double> d) {
        if (d.size() != space.dim()) {
            throw StructuralError("diagonal length does not match dimension");
        }
        Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()),
                                static_cast<Eigen::Index>(d.size()));
        for (std::size_t i = 0; i < d.size(); ++i) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
        }
        return {space, std::move(m)};
    }

    const HilbertSpace &space() const noexcept { return space_; }
    const Matrix &matrix() const noexcept { return data_; }
    std::size_t dim() const noexcept { return space_.dim(); }
    Complex operator()(std::size_t r, std::size_t c) const {
        return data_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }

    Op adjoint() const { return {space_, data_.adjoint()}; }
    Complex trace() const { return data_.trace(); }
    Vec apply(const Vec &v) const {
        require_same_space(space_, v.space(), "operator application");
        return {space_, data_ * v.components()};
    }
    /// <bra| this |ket>
    Complex sandwich(const Vec &bra, const Vec &ket) const {
        require_same_space(space_, bra.space(), "matrix element");
        require_same_space(space_, ket.space(), "matrix element");
        return bra.components().dot(data_ * ket.components());
    }

    friend Op operator*(const Op &a, const Op &b) {
        require_same_space(a.space_, b.space_, "operator product");
        return {a.space_, a.data_ * b.data_};
    }
    friend Op operator+(const Op &a, const Op &b) {
        require_same_space(a.space_, b.space_, "operator sum");
        return {a.space_, a.data_ + b.data_};
    }
    friend Op operator-(const Op &a, const Op &b) {
        require_same_space(a.space_, b.space_, "operator difference");
        return {a.space_, a.data_ - b.data_};
    }
    friend Op operator*(Complex s, const Op &a) { return {a.space_, s * a.data_}; }

  private:
    HilbertSpace space_;
    Matrix data_;
};

/// tr(AB)
inline Complex trace_product(const Op &a, const Op &b) {
    require_same_space(a.space(), b.space(), "trace of product");
    // sum_ij A_ij B_ji without forming the product
    return (a.matrix().transpose().cwiseProduct(b.matrix())).sum();
}

/// max |[A, B]| entry
inline double commutator_residual(const Op &a, const Op &b) {
    require_same_space(a.space(), b.space(), "commutator");
    return max_abs(a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

namespace detail {
inline HilbertSpace product_space(const HilbertSpace &a, const HilbertSpace &b) {
    return HilbertSpace(a.dim() * b.dim(), a.label() + "*" + b.label());
}
} // namespace detail

/// Kronecker product, first operand is the slow index.
inline Vec tensor(const Vec &a, const Vec &b) {
    const auto na = static_cast<Eigen::Index>(a.size());
    const auto nb = static_cast<Eigen::Index>(b.size());
    ColVector out(na * nb);
    for (Eigen::Index i = 0; i < na; ++i) {
        out.segment(i * nb, nb) = a.components()(i) * b.components();
    }
    return {detail::product_space(a.space(), b.space()), std::move(out)};
}

inline Op tensor(const Op &a, const Op &b) {
    const auto na = static_cast<Eigen::Index>(a.dim());
    const auto nb = static_cast<Eigen::Index>(b.dim());
    Matrix out(na * nb, na * nb);
    for (Eigen::Index i = 0; i < na; ++i) {
        for (Eigen::Index j = 0; j < na; ++j) {
            out.block(i * nb, j * nb, nb, nb) = a.matrix()(i, j) * b.matrix();
        }
    }
    return {detail::product_space(a.space(), b.space()), std::move(out)};
}

/**
 * An ordered tensor factorization of a product space.
 *
 * The product space label joins the factor labels with '*'. Factor-local
 * operators are lifted as I (x) ... (x) op (x) ... (x) I.
 */
class CompositeSpace {
  public:
    explicit CompositeSpace(std::vector<HilbertSpace> factors)
        : factors_(std::move(factors)), space_(make_space(factors_)) {}

    const HilbertSpace &space() const noexcept { return space_; }
    const std::vector<HilbertSpace> &factors() const noexcept { return factors_; }
    std::size_t factor_count() const noexcept { return factors_.size(); }
    const HilbertSpace &factor(std::size_t k) const {
        check_factor(k);
        return factors_[k];
    }

    std::size_t index_of(const std::string &label) const {
        for (std::size_t k = 0; k < factors_.size(); ++k) {
            if (factors_[k].label() == label) return k;
        }
        throw StructuralError("no factor '" + label + "' in composite '" +
                              space_.label() + "'");
    }

    /// Product of the dimensions of all factors other than k.
    std::size_t complement_dim(std::size_t k) const {
        check_factor(k);
        return space_.dim() / factors_[k].dim();
    }

    Op lift(const Op &local, std::size_t k) const {
        check_factor(k);
        require_same_space(local.space(), factors_[k], "lift");
        const auto [outer, inner] = strides(k);
        const auto dk = factors_[k].dim();
        const auto n = static_cast<Eigen::Index>(space_.dim());
        Matrix out = Matrix::Zero(n, n);
        for (std::size_t o = 0; o < outer; ++o) {
            for (std::size_t i = 0; i < dk; ++i) {
                for (std::size_t j = 0; j < dk; ++j) {
                    const Complex v = local(i, j);
                    if (v == Complex{}) continue;
                    for (std::size_t s = 0; s < inner; ++s) {
                        out(idx(o, i, s, dk, inner), idx(o, j, s, dk, inner)) = v;
                    }
                }
            }
        }
        return {space_, std::move(out)};
    }

    /// Lift a factor-local vector set: every |b> becomes |rest> (x) |b> (x) ...
    /// for all computational basis states of the other factors, in composite
    /// index order.
    Matrix lift_columns(const Matrix &local_columns, std::size_t k) const {
        check_factor(k);
        const auto [outer, inner] = strides(k);
        const auto dk = factors_[k].dim();
        const auto cols = static_cast<std::size_t>(local_columns.cols());
        Matrix out = Matrix::Zero(static_cast<Eigen::Index>(space_.dim()),
                                  static_cast<Eigen::Index>(cols * outer * inner));
        Eigen::Index c = 0;
        for (std::size_t o = 0; o < outer; ++o) {
            for (std::size_t b = 0; b < cols; ++b) {
                for (std::size_t s = 0; s < inner; ++s, ++c) {
                    for (std::size_t i = 0; i < dk; ++i) {
                        out(idx(o, i, s, dk, inner), c) = local_columns(
                            static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(b));
                    }
                }
            }
        }
        return out;
    }

    /// Trace out every factor except `keep`.
    Op partial_trace(const Op &m, std::size_t keep) const {
        check_factor(keep);
        if (!(m.space() == space_)) {
            throw StructuralError("partial trace: operator on '" +
                                  m.space().label() +
                                  "' is not on registered factorization '" +
                                  space_.label() + "'");
        }
        const auto [outer, inner] = strides(keep);
        const auto dk = factors_[keep].dim();
        const auto d = static_cast<Eigen::Index>(dk);
        Matrix out = Matrix::Zero(d, d);
        for (std::size_t i = 0; i < dk; ++i) {
            for (std::size_t j = 0; j < dk; ++j) {
                Complex acc{};
                for (std::size_t o = 0; o < outer; ++o) {
                    for (std::size_t s = 0; s < inner; ++s) {
                        acc += m.matrix()(idx(o, i, s, dk, inner),
                                          idx(o, j, s, dk, inner));
                    }
                }
                out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
            }
        }
        return {factors_[keep], std::move(out)};
    }

    /// (product of dims before k, product of dims after k)
    std::pair<std::size_t, std::size_t> strides(std::size_t k) const {
        check_factor(k);
        std::size_t outer = 1;
        std::size_t inner = 1;
        for (std::size_t f = 0; f < k; ++f) outer *= factors_[f].dim();
        for (std::size_t f = k + 1; f < factors_.size(); ++f) inner *= factors_[f].dim();
        return {outer, inner};
    }

  private:
    static HilbertSpace make_space(const std::vector<HilbertSpace> &factors) {
        if (factors.empty()) {
            throw StructuralError("composite space needs at least one factor");
        }
        std::size_t dim = 1;
        std::string label;
        for (const auto &f : factors) {
            for (const auto &g : factors) {
                if (&f != &g && f.label() == g.label()) {
                    throw StructuralError("duplicate factor label '" + f.label() + "'");
                }
            }
            dim *= f.dim();
            label += (label.empty() ? "" : "*") + f.label();
        }
        return HilbertSpace(dim, label);
    }

    void check_factor(std::size_t k) const {
        if (k >= factors_.size()) {
            throw StructuralError("factor index " + std::to_string(k) +
                                  " out of range for '" + space_.label() + "'");
        }
    }

    static Eigen::Index idx(std::size_t o, std::size_t i, std::size_t s,
                            std::size_t dk, std::size_t inner) {
        return static_cast<Eigen::Index>((o * dk + i) * inner + s);
    }

    std::vector<HilbertSpace> factors_;
    HilbertSpace space_;
};

enum class StructureKind { hermitian, unitary, projector, psd };

inline const char *to_string(StructureKind k) {
    switch (k) {
    case StructureKind::hermitian: return "hermitian";
    case StructureKind::unitary: return "unitary";
    case StructureKind::projector: return "projector";
    case StructureKind::psd: return "positive-semidefinite";
    }
    return "?";
}

struct StructureReport {
    StructureKind kind;
    bool passed;
    double residual;
};

inline double hermitian_residual(const Matrix &m) { return max_abs(m - m.adjoint()); }

/// Smallest eigenvalue of the Hermitian part of m.
inline double min_hermitian_eigenvalue(const Matrix &m) {
    const Matrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

/**
 * Residual-based structural predicate. Residuals (Chebyshev norm):
 *  - hermitian: |m - m^dagger|
 *  - unitary:   |m^dagger m - I|
 *  - projector: max(|m - m^dagger|, |m^2 - m|)
 *  - psd:       max(|m - m^dagger|, -lambda_min) with lambda_min taken on the
 *               Hermitian part
 */
inline StructureReport structure_check(const Op &m, StructureKind kind,
                                       double tol = kDefaultTol) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("structure_check: tolerance must be positive");
    }
    const Matrix &a = m.matrix();
    double residual = 0.0;
    switch (kind) {
    case StructureKind::hermitian:
        residual = hermitian_residual(a);
        break;
    case StructureKind::unitary:
        residual = max_abs(a.adjoint() * a - Matrix::Identity(a.rows(), a.cols()));
        break;
    case StructureKind::projector:
        residual = std::max(hermitian_residual(a), max_abs(a * a - a));
        break;
    case StructureKind::psd:
        residual = std::max(hermitian_residual(a),
                            std::max(0.0, -min_hermitian_eigenvalue(a)));
        break;
    }
    return {kind, residual <= tol, residual};
}

} // namespace qprob
