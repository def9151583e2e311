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
#include <span>
#include <vector>

#include "qmeasure/matrix.hpp"

namespace qmeasure {

/// Eigenvalues in ascending order with one orthonormal eigenvector each.
struct EigenSystem {
    std::vector<double> values;
    std::vector<Vector> vectors;
};

/**
 * Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
 * rotations.
 *
 * Eigenvalues come back ascending. Inside every cluster of numerically
 * degenerate eigenvalues (see cluster_eigenvalues) the eigenvectors are
 * replaced by a canonical basis of the cluster's eigenspace, so the output
 * depends only on the eigenspaces and not on the rotation history; e.g. the
 * identity always yields the standard basis.
 *
 * Throws NotHermitian when ‖M − M*‖_max > tol, NoConvergence when
 * 100·dim² sweeps do not annihilate the off-diagonal part.
 */
EigenSystem eig_hermitian(const ComplexMatrix &m, double tol = kDefaultTol,
                          double cluster_tol = kDefaultClusterTol);

/// Groups consecutive ascending values whose gap is at most
/// cluster_tol·max(1, |value|). Groups partition the index set in order.
std::vector<std::vector<std::size_t>>
cluster_eigenvalues(std::span<const double> values, double cluster_tol);

/// P = Σ v v*. Throws NotOrthonormal when |⟨v_i, v_j⟩ − δ_ij| > tol.
ComplexMatrix projector_from_basis(std::span<const Vector> vectors,
                                   double tol = kDefaultTol);

/// max |⟨v_i, v_j⟩ − δ_ij|
double orthonormality_residual(std::span<const Vector> vectors);

/**
 * Deterministic orthonormal basis of the range of the projector P with the
 * given rank: modified Gram–Schmidt over the columns P·e_0, P·e_1, ... in
 * ascending order, each vector phase-fixed so its first non-negligible
 * component is real positive.
 */
std::vector<Vector> canonical_basis(const ComplexMatrix &projector,
                                    std::size_t rank);

/// Multiplies v by a unit phase so the first component with modulus above
/// 1e-8·‖v‖ becomes real positive.
void fix_phase(Vector &v);

} // namespace qmeasure
