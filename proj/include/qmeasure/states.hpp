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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "qmeasure/matrix.hpp"

namespace qmeasure {

/// Positive, unit-trace Hermitian matrix describing an ensemble.
/// Instances only come out of validate() or operations that preserve the
/// invariants exactly (pure states, mixtures, trace-preserving channels).
class DensityOperator {
  public:
    [[nodiscard]] const ComplexMatrix &matrix() const noexcept { return matrix_; }
    [[nodiscard]] std::size_t dim() const noexcept { return matrix_.dim(); }
    /// Tr Z²
    [[nodiscard]] double purity() const;

    /// Wraps a matrix the caller has already established to be a valid
    /// density operator (e.g. the output of a trace-preserving channel).
    static DensityOperator assume_valid(ComplexMatrix m);

  private:
    explicit DensityOperator(ComplexMatrix m) : matrix_(std::move(m)) {}
    ComplexMatrix matrix_;
};

/// Unnormalized post-selection state. Its trace is the probability of the
/// selected branch.
class SubensembleState {
  public:
    explicit SubensembleState(ComplexMatrix m);

    [[nodiscard]] const ComplexMatrix &matrix() const noexcept { return matrix_; }
    [[nodiscard]] double weight() const noexcept { return weight_; }
    [[nodiscard]] std::size_t dim() const noexcept { return matrix_.dim(); }

  private:
    ComplexMatrix matrix_;
    double weight_;
};

struct WeightedState {
    double weight;
    DensityOperator state;
};

/// Hermiticity, spectrum floor and trace of a matrix, as checked by
/// validate().
struct StateDiagnostics {
    double hermiticity_residual;
    double min_eigenvalue;
    double trace;
};

StateDiagnostics diagnose(const ComplexMatrix &z);

/// v v* / ‖v‖². Throws ZeroVector.
DensityOperator from_pure(std::span<const Complex> v);

/// Convex combination. Throws WeightSum if a weight is not positive or the
/// weights do not sum to 1 within tol; DimMismatch on mixed sizes.
DensityOperator mix(std::span<const WeightedState> parts,
                    double tol = kDefaultTol);

/// G G* / Tr(G G*) for a dim×rank Ginibre G drawn from Rng(seed).
DensityOperator random_density(std::size_t dim, std::size_t rank,
                               std::uint64_t seed);

/// Throws NotHermitian, NotPositive (value = most negative eigenvalue) or
/// NotNormalized (value = trace).
DensityOperator validate(const ComplexMatrix &z, double tol = kDefaultTol);

/// Hermitian, positive within tol and trace in [−tol, 1 + tol]. Throws
/// InvalidState otherwise.
void validate_subensemble(const SubensembleState &s, double tol = kDefaultTol);

/// Rescales a selected branch to unit trace. Throws ImpossibleOutcome when
/// the branch weight is below min_weight.
DensityOperator normalize(const SubensembleState &s, double min_weight = 1e-12);

} // namespace qmeasure
