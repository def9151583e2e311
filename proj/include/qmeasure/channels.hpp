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
#include <optional>
#include <span>
#include <vector>

#include "qmeasure/matrix.hpp"
#include "qmeasure/observables.hpp"
#include "qmeasure/states.hpp"

namespace qmeasure {

struct Outcome {
    double eigenvalue;
    double probability;
};

/// Born distribution over the distinct eigenvalues of an observable.
struct OutcomeDistribution {
    std::vector<Outcome> outcomes;

    [[nodiscard]] double total() const noexcept;
};

/// One orthonormal list per outcome, spanning that outcome's eigenspace.
using BasisChoice = std::vector<std::vector<Vector>>;

/// w_k = Tr(P_k Z). Values outside [0, 1] by at most tol are clamped;
/// larger excursions, or a total off by more than tol, raise InvalidState.
OutcomeDistribution born(const Observable &obs, const DensityOperator &z,
                         double tol = kDefaultTol);

/// P_k Z P_k, unnormalized; its trace is the Born weight of outcome k.
SubensembleState lueders_select(const Observable &obs, std::size_t k,
                                const DensityOperator &z);

/// Σ_k P_k Z P_k, summed in outcome order from lueders_select.
DensityOperator lueders_aggregate(const Observable &obs,
                                  const DensityOperator &z);

/**
 * Degeneracy-breaking update Σ_s |ψ_s⟩⟨ψ_s| Z |ψ_s⟩⟨ψ_s| over a full
 * eigenbasis. Without a basis choice the observable's stored canonical
 * basis is used. A supplied basis must hold, for each outcome, exactly
 * multiplicity-many orthonormal vectors inside that eigenspace
 * (BadBasis otherwise).
 */
DensityOperator von_neumann_aggregate(const Observable &obs,
                                      const DensityOperator &z,
                                      const std::optional<BasisChoice> &basis = std::nullopt,
                                      double tol = kDefaultTol);

/// Cuts a flat list of dim vectors into per-outcome groups by multiplicity,
/// e.g. the columns of a basis file.
BasisChoice split_by_outcome(const Observable &obs, std::span<const Vector> vectors);

/**
 * Eigenvalue-repeatable measurement operators Θ_k = Σ_{s∈D_k} |θ_s⟩⟨ψ_s|,
 * mapping the observable's stored eigenbasis ψ onto target bases θ of the
 * same eigenspaces.
 */
class ThetaFamily {
  public:
    [[nodiscard]] std::size_t dim() const noexcept { return observable_.dim(); }
    [[nodiscard]] std::size_t size() const noexcept { return operators_.size(); }
    [[nodiscard]] const Observable &observable() const noexcept {
        return observable_;
    }
    /// Throws BadOutcomeIndex.
    [[nodiscard]] const ComplexMatrix &op(std::size_t k) const;
    [[nodiscard]] const std::vector<ComplexMatrix> &operators() const noexcept {
        return operators_;
    }

  private:
    friend ThetaFamily make_theta_family(const Observable &, const BasisChoice &, double);
    ThetaFamily(Observable obs, std::vector<ComplexMatrix> ops)
        : observable_(std::move(obs)), operators_(std::move(ops)) {}

    Observable observable_;
    std::vector<ComplexMatrix> operators_;
};

/// Worst deviations from Θ_k*Θ_k' = Θ_k'Θ_k* = δ_kk' P_k and
/// Θ_k P_k' = δ_kk' Θ_k.
struct ThetaResiduals {
    double adjoint_products;
    double projector_action;
};

ThetaResiduals theta_family_residuals(const ThetaFamily &fam);

/// Throws BadBasis (wrong count, not orthonormal) or SubspaceViolation
/// (a target vector leaves its eigenspace).
ThetaFamily make_theta_family(const Observable &obs, const BasisChoice &targets,
                              double tol = kDefaultTol);

/// θ = ψ: the family whose channel is the Lüders channel.
ThetaFamily lueders_family(const Observable &obs);

/// Θ_k Z Θ_k*
SubensembleState theta_select(const ThetaFamily &fam, std::size_t k,
                              const DensityOperator &z);
/// Σ_k Θ_k Z Θ_k*
DensityOperator theta_aggregate(const ThetaFamily &fam, const DensityOperator &z);

} // namespace qmeasure
