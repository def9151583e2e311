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
#include <string>
#include <vector>

#include "qmeasure/matrix.hpp"
#include "qmeasure/observables.hpp"
#include "qmeasure/states.hpp"

namespace qmeasure {

/// Null condition N Z = 0 on admissible states. N need not be a projector.
class Constraint {
  public:
    Constraint(ComplexMatrix op, std::string label);

    [[nodiscard]] const ComplexMatrix &op() const noexcept { return op_; }
    [[nodiscard]] const std::string &label() const noexcept { return label_; }
    [[nodiscard]] std::size_t dim() const noexcept { return op_.dim(); }

  private:
    ComplexMatrix op_;
    std::string label_;
};

/// Several constraints imposed together. Members must commute pairwise;
/// that is the reading of "mutually compatible" used here.
class ConstraintSet {
  public:
    /// Throws IncompatibleConstraints or DimMismatch.
    explicit ConstraintSet(std::vector<Constraint> members, double tol = kDefaultTol);

    [[nodiscard]] const std::vector<Constraint> &members() const noexcept {
        return members_;
    }

  private:
    std::vector<Constraint> members_;
};

struct ResidualCheck {
    bool ok;
    double residual;
};

/// ‖N Z‖_max ≤ tol
ResidualCheck satisfies(const DensityOperator &z, const Constraint &n,
                        double tol = kDefaultTol);

struct Measurability {
    bool measurable;
    double projector_residual;  // max_k ‖[P_k, N]‖_max
    double commutator_residual; // ‖[R, N]‖_max
};

/// R may be measured under N iff every spectral projector, and R itself,
/// commutes with N.
Measurability measurable_under(const Observable &r, const Constraint &n,
                               double tol = kDefaultTol);
/// Requires commutation with every member.
Measurability measurable_under(const Observable &r, const ConstraintSet &set,
                               double tol = kDefaultTol);

struct OutcomeResidual {
    std::size_t outcome;
    double eigenvalue;
    double weight;   // Born weight of the branch
    double residual; // ‖N P_k Z P_k‖_max
    bool preserved;
};

/// Per-outcome check that the Lüders branch still satisfies N. Throws
/// ConstraintViolatedOnInput if Z itself does not satisfy N.
std::vector<OutcomeResidual> preserves_constraint(const Observable &r,
                                                  const Constraint &n,
                                                  const DensityOperator &z,
                                                  double tol = kDefaultTol);

/// Exchange operator |a b⟩ → |b a⟩ on C^d ⊗ C^d.
ComplexMatrix swap_operator(std::size_t local_dim);

/// Two-particle exchange constraint on local_dim² dimensions:
/// symmetric (bosonic) states are the kernel of (1 − SWAP)/2, antisymmetric
/// (fermionic) states the kernel of (1 + SWAP)/2. Throws BadDim for
/// local_dim < 2.
Constraint make_exchange_constraint(std::size_t local_dim, bool symmetric);

/// Random state supported in ker N: random_density draws compressed onto
/// the kernel and renormalized. Draws whose kernel weight is below 1e-6
/// are rejected and redrawn from the next derived seed.
DensityOperator random_constrained_state(const Constraint &n, std::size_t rank,
                                         std::uint64_t seed,
                                         double tol = kDefaultTol);

} // namespace qmeasure
