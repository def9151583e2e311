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

#include "qmeasure/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmeasure/error.hpp"
#include "qmeasure/linalg.hpp"
#include "qmeasure/matrix_io.hpp"
#include "qmeasure/random.hpp"

namespace qmeasure {

double DensityOperator::purity() const {
    return trace_of_product(matrix_, matrix_).real();
}

DensityOperator DensityOperator::assume_valid(ComplexMatrix m) {
    return DensityOperator(std::move(m));
}

SubensembleState::SubensembleState(ComplexMatrix m)
    : matrix_(std::move(m)), weight_(matrix_.trace().real()) {}

StateDiagnostics diagnose(const ComplexMatrix &z) {
    StateDiagnostics d{};
    d.hermiticity_residual = hermiticity_residual(z);
    d.trace = z.trace().real();
    // The spectrum floor is taken on the Hermitian part; callers look at
    // hermiticity_residual first.
    const auto eig = eig_hermitian(hermitian_part(z), 1.0);
    d.min_eigenvalue = eig.values.front();
    return d;
}

DensityOperator from_pure(std::span<const Complex> v) {
    if (v.empty()) {
        throw Error(ErrorCode::ZeroVector, "empty state vector");
    }
    const double len = norm(v);
    if (len == 0.0 || !std::isfinite(len)) {
        throw Error(ErrorCode::ZeroVector, "state vector has zero norm");
    }
    Vector unit(v.begin(), v.end());
    for (auto &x : unit) {
        x /= len;
    }
    return DensityOperator::assume_valid(hermitian_part(ComplexMatrix::outer(unit, unit)));
}

DensityOperator mix(std::span<const WeightedState> parts, double tol) {
    if (parts.empty()) {
        throw Error(ErrorCode::WeightSum, "empty mixture");
    }
    const std::size_t n = parts.front().state.dim();
    ComplexMatrix acc(n);
    double total = 0.0;
    for (const auto &part : parts) {
        if (!(part.weight > 0.0)) {
            throw Error(ErrorCode::WeightSum,
                        "mixture weights must be positive, got " +
                            std::to_string(part.weight),
                        part.weight);
        }
        if (part.state.dim() != n) {
            throw Error(ErrorCode::DimMismatch, "mixture of unequal dimensions");
        }
        acc += Complex(part.weight) * part.state.matrix();
        total += part.weight;
    }
    if (std::abs(total - 1.0) > tol) {
        throw Error(ErrorCode::WeightSum,
                    "weights sum to " + std::to_string(total), total);
    }
    return DensityOperator::assume_valid(std::move(acc));
}

DensityOperator random_density(std::size_t dim, std::size_t rank,
                               std::uint64_t seed) {
    if (dim == 0 || rank == 0 || rank > dim) {
        throw Error(ErrorCode::BadRank,
                    "need 1 <= rank <= dim, got rank " + std::to_string(rank) +
                        " dim " + std::to_string(dim));
    }
    Rng rng(seed);
    std::vector<Complex> g(dim * rank);
    for (auto &x : g) {
        x = rng.complex_normal();
    }
    ComplexMatrix z(dim);
    double trace = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i; j < dim; ++j) {
            Complex acc = 0.0;
            for (std::size_t r = 0; r < rank; ++r) {
                acc += g[i * rank + r] * std::conj(g[j * rank + r]);
            }
            z(i, j) = acc;
            z(j, i) = std::conj(acc);
        }
        z(i, i) = z(i, i).real();
        trace += z(i, i).real();
    }
    z *= 1.0 / trace;
    return DensityOperator::assume_valid(std::move(z));
}

DensityOperator validate(const ComplexMatrix &z, double tol) {
    if (z.empty()) {
        throw Error(ErrorCode::BadDim, "empty state matrix");
    }
    if (!z.all_finite()) {
        throw Error(ErrorCode::NotHermitian, "state has non-finite entries");
    }
    const double herm = hermiticity_residual(z);
    if (herm > tol) {
        throw Error(ErrorCode::NotHermitian,
                    "‖Z − Z*‖_max = " + std::to_string(herm), herm);
    }
    const auto d = diagnose(z);
    if (d.min_eigenvalue < -tol) {
        throw Error(ErrorCode::NotPositive,
                    "most negative eigenvalue " + format_real(d.min_eigenvalue),
                    d.min_eigenvalue);
    }
    if (std::abs(d.trace - 1.0) > tol) {
        throw Error(ErrorCode::NotNormalized,
                    "trace " + format_real(d.trace), d.trace);
    }
    return DensityOperator::assume_valid(z);
}

void validate_subensemble(const SubensembleState &s, double tol) {
    const auto d = diagnose(s.matrix());
    if (d.hermiticity_residual > tol || d.min_eigenvalue < -tol ||
        d.trace < -tol || d.trace > 1.0 + tol) {
        throw Error(ErrorCode::InvalidState,
                    "subensemble state: hermiticity " +
                        format_real(d.hermiticity_residual) + ", min eigenvalue " +
                        format_real(d.min_eigenvalue) + ", trace " +
                        format_real(d.trace));
    }
}

DensityOperator normalize(const SubensembleState &s, double min_weight) {
    if (!(s.weight() >= min_weight)) {
        throw Error(ErrorCode::ImpossibleOutcome,
                    "branch weight " + format_real(s.weight()) +
                        " is below " + format_real(min_weight),
                    s.weight());
    }
    ComplexMatrix m = s.matrix();
    m *= 1.0 / s.weight();
    return DensityOperator::assume_valid(hermitian_part(m));
}

} // namespace qmeasure
