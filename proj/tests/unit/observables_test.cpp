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

#include "qmeasure/error.hpp"
#include "qmeasure/observables.hpp"
#include "qmeasure/random.hpp"

namespace qmeasure {
namespace {

TEST(SpectralDecompose, Examples) {
    const auto id = spectral_decompose(ComplexMatrix::identity(3));
    ASSERT_EQ(id.size(), 1u);
    EXPECT_EQ(id.pair(0).multiplicity, 3u);
    EXPECT_EQ(id.projector(0), ComplexMatrix::identity(3));

    const auto z = spectral_decompose(ComplexMatrix::diagonal({1, -1}));
    ASSERT_EQ(z.size(), 2u);
    EXPECT_EQ(z.eigenvalue(0), -1);
    EXPECT_EQ(z.projector(0), ComplexMatrix::diagonal({0, 1}));
    EXPECT_EQ(z.eigenvalue(1), 1);
    EXPECT_EQ(z.projector(1), ComplexMatrix::diagonal({1, 0}));

    const auto d = spectral_decompose(ComplexMatrix::diagonal({2, 2, 5}));
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d.pair(0).multiplicity, 2u);
    EXPECT_EQ(d.projector(0), ComplexMatrix::diagonal({1, 1, 0}));
    EXPECT_EQ(d.pair(1).multiplicity, 1u);
    EXPECT_TRUE(d.pair(1).simple());
    EXPECT_FALSE(d.non_degenerate());
}

TEST(SpectralDecompose, ProjectorFamilyOnRandomDegenerateObservables) {
    for (std::size_t dim = 2; dim <= 10; ++dim) {
        Rng rng(derive_seed(300, dim));
        std::vector<double> d(dim);
        for (auto &x : d) {
            x = std::floor(3 * rng.uniform());
        }
        const auto u = random_unitary(dim, rng);
        const auto m = hermitian_part(u * ComplexMatrix::diagonal(d) * u.adjoint());
        const auto obs = spectral_decompose(m);
        const auto res = projector_family_residuals(obs);
        EXPECT_LE(res.orthogonality, 1e-10);
        EXPECT_LE(res.completeness, 1e-10);
        std::size_t total = 0;
        for (const auto &p : obs.pairs()) {
            total += p.multiplicity;
            EXPECT_NEAR(p.projector.trace().real(), static_cast<double>(p.multiplicity), 1e-10);
        }
        EXPECT_EQ(total, dim);
        EXPECT_LE(max_abs_diff(reconstruct(obs), m), 1e-10);
    }
}

TEST(Reconstruct, Examples) {
    const auto one = Observable::from_spectral({{1.0, ComplexMatrix::identity(2)}});
    EXPECT_EQ(reconstruct(one), ComplexMatrix::identity(2));
    const ComplexMatrix x{{0, 1}, {1, 0}};
    EXPECT_LE(max_abs_diff(reconstruct(spectral_decompose(x)), x), 1e-15);
    const auto d = Observable::from_spectral(
        {{5.0, ComplexMatrix::diagonal({0, 0, 1})}, {2.0, ComplexMatrix::diagonal({1, 1, 0})}});
    EXPECT_EQ(d.eigenvalue(0), 2.0);
    EXPECT_EQ(reconstruct(d), ComplexMatrix::diagonal({2, 2, 5}));
}

TEST(FromSpectral, RejectsBrokenFamilies) {
    const auto p = ComplexMatrix::diagonal({1, 0});
    const auto q = ComplexMatrix::diagonal({0, 1});
    EXPECT_THROW((void)Observable::from_spectral({{1.0, p}}), Error);            // incomplete
    EXPECT_THROW((void)Observable::from_spectral({{1.0, p}, {1.0, q}}), Error);  // repeated
    EXPECT_THROW((void)Observable::from_spectral({{1.0, p}, {2.0, p}}), Error);  // overlap
    EXPECT_THROW((void)Observable::from_spectral({{1.0, ComplexMatrix::diagonal({0.5, 0.5})},
                                                  {2.0, ComplexMatrix::diagonal({0.5, 0.5})}}),
                 Error); // not projectors
}

TEST(Refinement, Examples) {
    const auto fine = spectral_decompose(ComplexMatrix::diagonal({1, 2, 3}));
    const auto coarse = spectral_decompose(ComplexMatrix::diagonal({1, 1, 3}));
    EXPECT_TRUE(is_function_refinement(fine, coarse));
    EXPECT_FALSE(is_function_refinement(coarse, fine));
    const auto id = spectral_decompose(ComplexMatrix::identity(3));
    EXPECT_TRUE(is_function_refinement(fine, id));
    EXPECT_TRUE(is_function_refinement(coarse, id));
    const auto x = spectral_decompose(ComplexMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
    EXPECT_FALSE(is_function_refinement(x, coarse));
    EXPECT_THROW((void)is_function_refinement(fine, spectral_decompose(ComplexMatrix::identity(2))),
                 Error);
}

TEST(ObservableText, SpectralBlockAndRawMatrixAgree) {
    const auto raw = parse_observable("dim 3\n2 0 0\n0 2 0\n0 0 5\n");
    const auto spec = parse_observable(format_spectral(raw));
    ASSERT_EQ(spec.size(), raw.size());
    for (std::size_t k = 0; k < raw.size(); ++k) {
        EXPECT_EQ(spec.eigenvalue(k), raw.eigenvalue(k));
        EXPECT_EQ(spec.projector(k), raw.projector(k));
    }
    EXPECT_THROW((void)parse_observable("spectral 1\neigenvalue 1\ndim 2\n1 0\n0 0\n"), Error);
}

TEST(Observable, OutcomeIndexIsChecked) {
    const auto obs = spectral_decompose(ComplexMatrix::diagonal({1, 2}));
    try {
        (void)obs.pair(2);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::BadOutcomeIndex);
        EXPECT_EQ(e.error_class(), ErrorClass::Contract);
    }
}

} // namespace
} // namespace qmeasure
