// Copyright 2026 The qmeasure Authors
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

#include <cmath>

#include "curated.hpp"
#include "qmeasure/compatibility.hpp"
#include "qmeasure/error.hpp"
#include "qmeasure/random.hpp"

namespace qmeasure {
namespace {

const double kH = 1 / std::sqrt(2.0);

Observable diag(std::initializer_list<double> d) {
    return spectral_decompose(ComplexMatrix::diagonal(d));
}
Observable pauli_x() { return spectral_decompose(ComplexMatrix{{0, 1}, {1, 0}}); }
Observable ix4() {
    return spectral_decompose(
        ComplexMatrix{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
}

TEST(ClassifyResidual, DeadBand) {
    EXPECT_EQ(classify_residual(0, 1e-9), Verdict::Holds);
    EXPECT_EQ(classify_residual(0.5e-10, 1e-9), Verdict::Holds);
    EXPECT_EQ(classify_residual(1e-9, 1e-9), Verdict::Indeterminate);
    EXPECT_EQ(classify_residual(2e-8, 1e-9), Verdict::Fails);
    EXPECT_EQ(to_string(Verdict::Indeterminate), "indeterminate");
}

TEST(SequentialSelect, HandComputedChain) {
    const auto r = diag({1, -1});
    const auto x = pauli_x();
    const auto e1 = from_pure(Vector{1, 0});
    // P_{+1} e1 = e1; |⟨+|e1⟩|² = 1/2; then ⟨e1|+⟩⟨+|e1⟩ = 1/2 again
    const auto sel = sequential_select(r, 1, x, 1, e1);
    EXPECT_NEAR(sel.weight(), 0.5, 1e-15);
    EXPECT_NEAR(trace_of_product(r.projector(1), sel.matrix()).real(), 0.25, 1e-15);
    const auto after = born(r, normalize(sel));
    EXPECT_NEAR(after.outcomes[0].probability, 0.5, 1e-15);
    EXPECT_NEAR(after.outcomes[1].probability, 0.5, 1e-15);
}

TEST(SequentialSelect, SameObservableIsOneSelection) {
    const auto o = diag({2, 2, 5});
    const auto z = random_density(3, 3, 5);
    EXPECT_LE(max_abs_diff(sequential_select(o, 0, o, 0, z).matrix(),
                           lueders_select(o, 0, z).matrix()),
              1e-15);
}

TEST(Conditions, Examples) {
    const auto r = diag({1, -1});
    const auto x = pauli_x();
    for (const auto mode : {CheckMode::Exact, CheckMode::Sampled}) {
        EXPECT_TRUE(condition1_holds(r, r, mode).holds());
        EXPECT_TRUE(condition2_holds(r, r, mode).holds());
        EXPECT_EQ(condition1_holds(r, x, mode).verdict, Verdict::Fails);
        EXPECT_EQ(condition2_holds(r, x, mode).verdict, Verdict::Fails);
        EXPECT_TRUE(condition1_holds(diag({1, 1, -1, -1}), ix4(), mode).holds());
        EXPECT_TRUE(condition2_holds(diag({1, 1, -1, -1}), ix4(), mode).holds());
    }
}

TEST(Conditions, ExactResidualsForPauliPair) {
    // P_l P̃_j P_k with |⟨e_l|±⟩|² |⟨±|e_k⟩|² = 1/4 in every entry that survives
    const auto c1 = condition1_holds(diag({1, -1}), pauli_x(), CheckMode::Exact);
    EXPECT_NEAR(c1.residual, 0.25, 1e-15);
    // Σ_k P_k P̃_+ P_k = ½ I differs from P̃_+ = ½[[1,1],[1,1]] by ½ off-diagonal
    const auto c2 = condition2_holds(diag({1, -1}), pauli_x(), CheckMode::Exact);
    EXPECT_NEAR(c2.residual, 0.5, 1e-15);
}

TEST(Conditions, SampledModeIsSeedDeterministic) {
    const SampleConfig sc{1e-9, 20, 42};
    const auto a = condition1_holds(diag({1, -1}), pauli_x(), CheckMode::Sampled, sc);
    const auto b = condition1_holds(diag({1, -1}), pauli_x(), CheckMode::Sampled, sc);
    EXPECT_EQ(a.residual, b.residual);
    ASSERT_TRUE(a.witness.state.has_value());
}

TEST(Conditions, SymmetricOnCuratedPairs) {
    const SampleConfig sc{1e-9, 30, 3};
    for (std::size_t dim = 2; dim <= 5; ++dim) {
        for (const auto &p : testing::curated_pairs(dim, 8, 21)) {
            for (const auto mode : {CheckMode::Exact, CheckMode::Sampled}) {
                EXPECT_EQ(condition1_holds(p.r, p.s, mode, sc).verdict,
                          condition1_holds(p.s, p.r, mode, sc).verdict);
                EXPECT_EQ(condition2_holds(p.r, p.s, mode, sc).verdict,
                          condition2_holds(p.s, p.r, mode, sc).verdict);
            }
            const auto comm = commutes(reconstruct(p.r), reconstruct(p.s), 1e-9).commutes;
            EXPECT_EQ(comm, p.commuting);
            if (comm) {
                const auto chain = projector_chain_residuals(p.r, p.s);
                EXPECT_LE(chain.cross, 1e-9);
                EXPECT_LE(chain.left_absorption, 1e-9);
                EXPECT_LE(chain.right_absorption, 1e-9);
                EXPECT_LE(chain.projector_commute, 1e-9);
            }
        }
    }
}

TEST(Lemma, Examples) {
    Rng rng(1);
    const auto c = ginibre(3, rng);
    const auto id = lemma_check(ComplexMatrix::identity(3), c);
    EXPECT_TRUE(id.holds);
    // with B = I both sides equal ‖Cx‖²
    EXPECT_NEAR(id.worst_slack, 0, 1e-12);
    const auto ker = lemma_check(ComplexMatrix::diagonal({1, 0}), ComplexMatrix{{0, 0}, {1, 1}});
    EXPECT_TRUE(ker.holds);
    EXPECT_EQ(ker.bc_norm, 0.0);
    EXPECT_EQ(ker.cbc_norm, 0.0);
    EXPECT_THROW((void)lemma_check(ComplexMatrix::diagonal({1, -1}), ComplexMatrix::identity(2)),
                 Error);
}

TEST(Heisenberg, HadamardRotatesProjectors) {
    const ComplexMatrix h{{kH, kH}, {kH, -kH}};
    const auto r = heisenberg_observable(diag({1, -1}), h);
    EXPECT_EQ(r.eigenvalues(), (std::vector<double>{-1, 1}));
    EXPECT_LE(max_abs_diff(r.projector(1), ComplexMatrix{{0.5, 0.5}, {0.5, 0.5}}), 1e-15);
    EXPECT_LE(max_abs_diff(r.projector(0), ComplexMatrix{{0.5, -0.5}, {-0.5, 0.5}}), 1e-15);
    EXPECT_THROW((void)heisenberg_observable(diag({1, -1}), ComplexMatrix::diagonal({1, 2})), Error);
}

TEST(CompatReport, Examples) {
    const auto r = diag({1, -1});
    const auto comm = compat_report(diag({1, 1, -1, -1}), ix4(), std::nullopt, std::nullopt);
    EXPECT_EQ(comm.condition1, Verdict::Holds);
    EXPECT_EQ(comm.condition2, Verdict::Holds);
    EXPECT_EQ(comm.commute, Verdict::Holds);
    EXPECT_FALSE(comm.witness.has_value());

    const auto xz = compat_report(r, pauli_x(), std::nullopt, std::nullopt);
    EXPECT_EQ(xz.condition1, Verdict::Fails);
    EXPECT_EQ(xz.condition2, Verdict::Fails);
    EXPECT_EQ(xz.commute, Verdict::Fails);
    EXPECT_NEAR(xz.commutator_residual, 2, 1e-15);
    EXPECT_TRUE(xz.witness.has_value());

    Rng rng(8);
    const auto u = random_unitary(2, rng);
    const auto evolved = compat_report(r, r, std::nullopt, u);
    EXPECT_EQ(evolved.commute, Verdict::Fails);
    const auto both = compat_report(r, r, u, u);
    EXPECT_EQ(both.commute, Verdict::Holds);
}

TEST(ThetaConditions, LuedersFamiliesMatchPlainConditions) {
    for (std::size_t dim = 2; dim <= 4; ++dim) {
        for (const auto &p : testing::curated_pairs(dim, 6, 5)) {
            const auto fr = lueders_family(p.r);
            const auto fs = lueders_family(p.s);
            for (const auto mode : {CheckMode::Exact, CheckMode::Sampled}) {
                EXPECT_EQ(theta_condition1(fr, fs, mode).verdict,
                          condition1_holds(p.r, p.s, mode).verdict);
                EXPECT_EQ(theta_condition2(fr, fs, mode).verdict,
                          condition2_holds(p.r, p.s, mode).verdict);
            }
        }
    }
}

TEST(ThetaConditions, FunctionOfRWithRotatedTargetsHolds) {
    const auto r = diag({2, 2, 5});
    const auto s = diag({1, 1, 3});
    const auto fr = make_theta_family(r, testing::random_theta_basis(r, 1));
    const auto fs = make_theta_family(s, testing::random_theta_basis(s, 2));
    for (const auto mode : {CheckMode::Exact, CheckMode::Sampled}) {
        EXPECT_TRUE(theta_condition1(fr, fs, mode).holds());
        EXPECT_TRUE(theta_condition2(fr, fs, mode).holds());
    }
}

TEST(ThetaConditions, RotationInsideOtherBlockBreaksFirstCondition) {
    // R = diag(1,2,3) and S = diag(1,1,2) commute, but a target basis for S
    // that mixes e1 and e2 moves an R eigenvector to another R eigenspace.
    const auto r = diag({1, 2, 3});
    const auto s = diag({1, 1, 2});
    const BasisChoice mixing{{Vector{kH, kH, 0}, Vector{kH, -kH, 0}}, {Vector{0, 0, 1}}};
    const auto fs = make_theta_family(s, mixing);
    const auto c1 = theta_condition1(lueders_family(r), fs, CheckMode::Exact);
    EXPECT_EQ(c1.verdict, Verdict::Fails);
    EXPECT_GT(c1.residual, 0.1);
}

TEST(ThetaConditions, PauliPairFailsForAnyPhases) {
    const auto r = diag({1, -1});
    const auto x = pauli_x();
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto fr = make_theta_family(r, testing::random_theta_basis(r, seed));
        const auto fx = make_theta_family(x, testing::random_theta_basis(x, seed + 10));
        EXPECT_EQ(theta_condition1(fr, fx, CheckMode::Exact).verdict, Verdict::Fails);
        EXPECT_EQ(theta_condition2(fr, fx, CheckMode::Exact).verdict, Verdict::Fails);
    }
}

} // namespace
} // namespace qmeasure
