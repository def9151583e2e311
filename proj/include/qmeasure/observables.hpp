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
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qmeasure/matrix.hpp"

namespace qmeasure {

/// One eigenvalue r_k with its spectral projector P_k and an orthonormal
/// basis of the range of P_k.
struct SpectralPair {
    double eigenvalue;
    ComplexMatrix projector;
    std::size_t multiplicity;
    std::vector<Vector> basis;

    [[nodiscard]] bool simple() const noexcept { return multiplicity == 1; }
};

/// Residuals of the projector-family identities
/// P_j P_k = δ_jk P_k and Σ P_k = 1.
struct ProjectorFamilyResiduals {
    double orthogonality;
    double completeness;
};

/**
 * Hermitian observable held in spectral form R = Σ r_k P_k.
 *
 * Eigenvalues are strictly increasing; the projectors are mutually
 * orthogonal and sum to the identity. The stored per-outcome bases are the
 * canonical eigenbases produced by eig_hermitian / canonical_basis and
 * serve as the default orthogonal system for degeneracy-breaking rules.
 */
class Observable {
  public:
    /// Builds and re-validates an observable from (eigenvalue, projector)
    /// pairs in any order. Throws InvalidSpectrum for repeated eigenvalues,
    /// non-projectors or a family that is not orthogonal and complete.
    static Observable from_spectral(std::vector<std::pair<double, ComplexMatrix>> pairs,
                                    double tol = kDefaultTol);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    /// Number of distinct eigenvalues (outcomes).
    [[nodiscard]] std::size_t size() const noexcept { return pairs_.size(); }
    [[nodiscard]] const std::vector<SpectralPair> &pairs() const noexcept {
        return pairs_;
    }
    /// Throws BadOutcomeIndex.
    [[nodiscard]] const SpectralPair &pair(std::size_t k) const;
    [[nodiscard]] const ComplexMatrix &projector(std::size_t k) const {
        return pair(k).projector;
    }
    [[nodiscard]] double eigenvalue(std::size_t k) const {
        return pair(k).eigenvalue;
    }
    [[nodiscard]] std::vector<double> eigenvalues() const;
    [[nodiscard]] bool non_degenerate() const noexcept;
    /// Concatenation of the per-outcome bases, outcome by outcome.
    [[nodiscard]] std::vector<Vector> flat_basis() const;

  private:
    friend Observable spectral_decompose(const ComplexMatrix &, double, double);
    Observable(std::size_t dim, std::vector<SpectralPair> pairs)
        : dim_(dim), pairs_(std::move(pairs)) {}

    std::size_t dim_ = 0;
    std::vector<SpectralPair> pairs_;
};

ProjectorFamilyResiduals projector_family_residuals(const Observable &obs);

/// Eigendecomposition followed by eigenvalue clustering. Each cluster's
/// representative eigenvalue is the mean of its members.
Observable spectral_decompose(const ComplexMatrix &m,
                              double cluster_tol = kDefaultClusterTol,
                              double tol = kDefaultTol);

/// Σ r_k P_k
ComplexMatrix reconstruct(const Observable &obs);

/// True iff every coarse projector equals a sum of fine projectors within
/// tol, i.e. coarse = f(fine) for an eigenvalue-merging function f.
bool is_function_refinement(const Observable &fine, const Observable &coarse,
                            double tol = kDefaultTol);

// Observable files hold either a raw Hermitian matrix (decomposed on load)
// or a spectral block:
//
//   spectral <count>
//   eigenvalue <r>
//   dim <n>
//   <n rows>
//   ... repeated <count> times
Observable parse_observable(std::string_view text,
                            double cluster_tol = kDefaultClusterTol,
                            double tol = kDefaultTol);
Observable load_observable_file(const std::filesystem::path &path,
                                double cluster_tol = kDefaultClusterTol,
                                double tol = kDefaultTol);
std::string format_spectral(const Observable &obs);

} // namespace qmeasure
