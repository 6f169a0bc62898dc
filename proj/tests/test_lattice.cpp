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

#include <gtest/gtest.h>

#include "support.hpp"

namespace qprob {
namespace {

using testing::make_rng;
using testing::projector_distance;

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Eventuality line(const HilbertSpace &s, std::initializer_list<Complex> v) {
    ColVector c(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (auto x : v) c(i++) = x;
    return Eventuality::span(s, Matrix(c));
}

Eventuality basis_span(const HilbertSpace &s, std::initializer_list<std::size_t> idx) {
    const std::vector<std::size_t> v(idx);
    return Eventuality::of_basis_states(s, v);
}

TEST(Eventuality, SpanExamples) {
    const HilbertSpace s(2);
    const auto e = line(s, {1, 0});
    EXPECT_EQ(e.rank(), 1u);
    Matrix expect = Matrix::Zero(2, 2);
    expect(0, 0) = 1.0;
    EXPECT_LE(max_abs(e.projector().matrix() - expect), 1e-15);

    Matrix dep(2, 2);
    dep << 1, 2, 0, 0;
    EXPECT_EQ(Eventuality::span(s, dep).rank(), 1u);
}

TEST(Eventuality, FromProjectorUsesEigenspace) {
    const HilbertSpace s(2);
    Matrix p(2, 2);
    p << 0.5, 0.5, 0.5, 0.5;
    const auto e = Eventuality::from_projector(Op(s, p));
    EXPECT_EQ(e.rank(), 1u);
    // eigendecomposition oracle: the +1 eigenvector of p is (1,1)/sqrt2
    Eigen::SelfAdjointEigenSolver<Matrix> es(p);
    const ColVector top = es.eigenvectors().col(1);
    EXPECT_NEAR(std::abs(top.dot(e.basis().col(0))), 1.0, 1e-12);
    EXPECT_NEAR(e.basis()(0, 0).real(), kInvSqrt2, 1e-12);
    EXPECT_NEAR(e.basis()(1, 0).real(), kInvSqrt2, 1e-12);

    Matrix bad(2, 2);
    bad << 0.6, 0, 0, 0;
    EXPECT_THROW(Eventuality::from_projector(Op(s, bad)), ValidationError);
}

TEST(Eventuality, CanonicalBasisDependsOnlyOnProjector) {
    auto rng = make_rng(10);
    for (int trial = 0; trial < 50; ++trial) {
        const HilbertSpace s(testing::uniform_int(rng, 2, 6));
        const auto r = testing::uniform_int(rng, 1, s.dim());
        const Matrix f = testing::random_frame(rng, s.dim(), r);
        // same subspace, different spanning set
        const Matrix g = f * testing::random_unitary(rng, r);
        const auto a = Eventuality::span(s, f);
        const auto b = Eventuality::span(s, g);
        EXPECT_LE(max_abs(a.basis() - b.basis()), 1e-9);
        EXPECT_LE(max_abs(a.basis().adjoint() * a.basis() -
                          Matrix::Identity(static_cast<Eigen::Index>(r),
                                           static_cast<Eigen::Index>(r))),
                  1e-12);
    }
}

TEST(Meet, Examples) {
    const HilbertSpace s3(3);
    const auto m = meet(basis_span(s3, {0, 1}), basis_span(s3, {1, 2}));
    EXPECT_TRUE(same_eventuality(m, basis_span(s3, {1})));

    const HilbertSpace s2(2);
    EXPECT_TRUE(meet(line(s2, {1, 0}), line(s2, {kInvSqrt2, kInvSqrt2})).is_null());

    // null-space oracle on stacked projectors
    Matrix cols(3, 2);
    cols << kInvSqrt2, 0, 0, 1, kInvSqrt2, 0;
    const auto b = Eventuality::span(s3, cols);
    const auto a = basis_span(s3, {0, 1});
    const auto got = meet(a, b);
    EXPECT_TRUE(same_eventuality(got, basis_span(s3, {1})));
    EXPECT_LE(projector_distance(got, testing::meet_svd(a, b)), 1e-10);
}

TEST(Join, Examples) {
    const HilbertSpace s2(2);
    EXPECT_EQ(join(line(s2, {1, 0}), line(s2, {0, 1})).rank(), 2u);
    const auto e = line(s2, {1, 0});
    EXPECT_TRUE(same_eventuality(join(e, e), e));
    const auto j = join(e, line(s2, {kInvSqrt2, kInvSqrt2}));
    EXPECT_TRUE(j.is_certain());
    EXPECT_LE(max_abs(j.projector().matrix() - Matrix::Identity(2, 2)), 1e-12);
}

TEST(Orthocomplement, Examples) {
    const HilbertSpace s2(2);
    EXPECT_TRUE(orthocomplement(Eventuality::null(s2)).is_certain());
    EXPECT_TRUE(same_eventuality(orthocomplement(line(s2, {1, 0})), line(s2, {0, 1})));
    EXPECT_TRUE(orthocomplement(Eventuality::certain(s2)).is_null());
}

TEST(Leq, Examples) {
    const HilbertSpace s3(3);
    const auto a = basis_span(s3, {0});
    const auto b = basis_span(s3, {0, 1});
    EXPECT_TRUE(leq(Eventuality::null(s3), a));
    EXPECT_TRUE(leq(a, b));
    EXPECT_FALSE(leq(b, a));
    EXPECT_TRUE(orthogonal(a, basis_span(s3, {1, 2})));
}

/// Random pairs that share a random common subspace, so meets are non-trivial.
std::pair<Eventuality, Eventuality> overlapping_pair(testing::Rng &rng, const HilbertSpace &s) {
    const auto d = s.dim();
    const Matrix u = testing::random_unitary(rng, d);
    const auto common = testing::uniform_int(rng, 0, d - 1);
    const auto ra = testing::uniform_int(rng, 0, d - common);
    const auto rb = testing::uniform_int(rng, 0, d - common);
    Matrix fa(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(common + ra));
    Matrix fb(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(common + rb));
    fa << u.leftCols(static_cast<Eigen::Index>(common)),
        testing::random_matrix(rng, d, ra);
    fb << u.leftCols(static_cast<Eigen::Index>(common)),
        testing::random_matrix(rng, d, rb);
    return {Eventuality::span(s, fa), Eventuality::span(s, fb)};
}

TEST(LatticeProperties, RandomSubspacePairs) {
    auto rng = make_rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const HilbertSpace s(testing::uniform_int(rng, 2, 6));
        const auto [a, b] = overlapping_pair(rng, s);
        const auto m = meet(a, b);
        const auto j = join(a, b);

        EXPECT_LE(projector_distance(m, testing::meet_de_morgan(a, b)), 1e-8);
        EXPECT_LE(projector_distance(m, testing::meet_svd(a, b)), 1e-8);
        EXPECT_LE(projector_distance(meet(a, j), a), 1e-8);
        EXPECT_LE(projector_distance(join(a, m), a), 1e-8);
        EXPECT_TRUE(join(a, orthocomplement(a)).is_certain());
        EXPECT_TRUE(meet(a, orthocomplement(a)).is_null());
        EXPECT_LE(projector_distance(orthocomplement(orthocomplement(a)), a), 1e-10);
        EXPECT_TRUE(leq(m, a, 1e-8));
        EXPECT_TRUE(leq(a, j, 1e-8));
        EXPECT_EQ(j.rank(), std::min(s.dim(), a.rank() + b.rank() - m.rank()));
    }
}

TEST(LatticeProperties, JoinRankFormulaOnGenericInputs) {
    auto rng = make_rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        const HilbertSpace s(testing::uniform_int(rng, 2, 6));
        const auto a = testing::random_eventuality(rng, s, testing::uniform_int(rng, 0, s.dim()));
        const auto b = testing::random_eventuality(rng, s, testing::uniform_int(rng, 0, s.dim()));
        const auto m = meet(a, b);
        EXPECT_EQ(join(a, b).rank(), std::min(s.dim(), a.rank() + b.rank() - m.rank()));
        // generic position: meet has the minimal possible rank
        const auto expected = a.rank() + b.rank() > s.dim() ? a.rank() + b.rank() - s.dim() : 0;
        EXPECT_EQ(m.rank(), expected);
    }
}

TEST(Classical, CoinExamples) {
    auto model = std::make_shared<const ClassicalModel>(std::vector<std::string>{"h", "t"},
                                                        std::vector<double>{0.5, 0.5});
    const auto h = ClassicalEventuality::of(model, {"h"});
    EXPECT_EQ(classical_prob(h), 0.5);
    EXPECT_EQ(classical_prob(ClassicalEventuality::certain(model)), 1.0);
    EXPECT_EQ(classical_prob(ClassicalEventuality::null(model)), 0.0);

    auto biased = std::make_shared<const ClassicalModel>(std::vector<std::string>{"h", "t"},
                                                         std::vector<double>{0.7, 0.3});
    const auto e1 = ClassicalEventuality::of(biased, {"h"});
    const auto e2 = ClassicalEventuality::of(biased, {"t"});
    EXPECT_DOUBLE_EQ(classical_prob(classical_join(e1, e2)),
                     classical_prob(e1) + classical_prob(e2) -
                         classical_prob(classical_meet(e1, e2)));
    EXPECT_EQ(classical_prob(classical_join(e1, e2)), 1.0);
}

TEST(Classical, ModelValidation) {
    using V = std::vector<double>;
    using S = std::vector<std::string>;
    EXPECT_THROW(ClassicalModel(S{"a", "b"}, V{0.5, 0.6}), ValidationError);
    EXPECT_THROW(ClassicalModel(S{"a", "b"}, V{1.5, -0.5}), ValidationError);
    EXPECT_THROW(ClassicalModel(S{"a", "a"}, V{0.5, 0.5}), StructuralError);
    EXPECT_THROW(ClassicalModel(S{"a"}, V{0.5, 0.5}), StructuralError);
    auto m1 = std::make_shared<const ClassicalModel>(S{"a"}, V{1.0});
    auto m2 = std::make_shared<const ClassicalModel>(S{"a"}, V{1.0});
    EXPECT_THROW(classical_meet(ClassicalEventuality::certain(m1),
                                ClassicalEventuality::certain(m2)),
                 StructuralError);
}

TEST(Classical, InclusionExclusionExactOnDyadicModels) {
    auto rng = make_rng(13);
    for (int trial = 0; trial < 500; ++trial) {
        const auto n = testing::uniform_int(rng, 1, 12);
        std::vector<std::string> pts;
        for (std::size_t i = 0; i < n; ++i) pts.push_back("w" + std::to_string(i));
        auto model = std::make_shared<const ClassicalModel>(pts, testing::dyadic_measure(rng, n));
        auto random_event = [&] {
            std::vector<bool> mask(n);
            for (std::size_t i = 0; i < n; ++i) mask[i] = testing::uniform_int(rng, 0, 1) == 1;
            return ClassicalEventuality(model, mask);
        };
        const auto a = random_event();
        const auto b = random_event();
        EXPECT_EQ(classical_prob(classical_join(a, b)),
                  classical_prob(a) + classical_prob(b) - classical_prob(classical_meet(a, b)));
        EXPECT_EQ(classical_prob(a) + classical_prob(classical_complement(a)), 1.0);
        if (classical_leq(a, b)) {
            EXPECT_LE(classical_prob(a), classical_prob(b));
        }
        EXPECT_TRUE(classical_leq(classical_meet(a, b), a));
    }
}

TEST(Classical, QuantumJoinBreaksTheSumRule) {
    const HilbertSpace s(2);
    const auto a = line(s, {1, 0});
    const auto b = line(s, {kInvSqrt2, kInvSqrt2});
    const auto p = ProbabilityOperator::pure(Vec::basis(s, 0));
    const double lhs = born(p, join(a, b));
    const double rhs = born(p, a) + born(p, b) - born(p, meet(a, b));
    EXPECT_NEAR(lhs, 1.0, 1e-12);
    EXPECT_NEAR(rhs, 1.5, 1e-12);
    EXPECT_GT(std::abs(lhs - rhs), 0.4);
}

} // namespace
} // namespace qprob
