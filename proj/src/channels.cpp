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

#include "qmeasure/channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmeasure/error.hpp"
#include "qmeasure/linalg.hpp"
#include "qmeasure/matrix_io.hpp"

namespace qmeasure {

namespace {

void require_dims(const Observable &obs, const DensityOperator &z) {
    if (obs.dim() != z.dim()) {
        throw Error(ErrorCode::DimMismatch,
                    "observable dim " + std::to_string(obs.dim()) +
                        " vs state dim " + std::to_string(z.dim()));
    }
}

// Distance of v from the range of P, ‖P v − v‖_∞.
double range_defect(const ComplexMatrix &p, const Vector &v) {
    const Vector pv = p * v;
    double worst = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        worst = std::max(worst, std::abs(pv[i] - v[i]));
    }
    return worst;
}

enum class RangeFailure { BadBasis, SubspaceViolation };

void check_basis_choice(const Observable &obs, const BasisChoice &basis,
                        double tol, RangeFailure on_range) {
    if (basis.size() != obs.size()) {
        throw Error(ErrorCode::BadBasis,
                    "basis choice has " + std::to_string(basis.size()) +
                        " groups for " + std::to_string(obs.size()) + " outcomes");
    }
    for (std::size_t k = 0; k < obs.size(); ++k) {
        const auto &pair = obs.pair(k);
        const auto &vectors = basis[k];
        if (vectors.size() != pair.multiplicity) {
            throw Error(ErrorCode::BadBasis,
                        "outcome " + std::to_string(k) + " needs " +
                            std::to_string(pair.multiplicity) + " vectors, got " +
                            std::to_string(vectors.size()));
        }
        for (const auto &v : vectors) {
            if (v.size() != obs.dim()) {
                throw Error(ErrorCode::BadBasis, "basis vector of wrong length");
            }
        }
        const double ortho = orthonormality_residual(vectors);
        if (ortho > tol) {
            throw Error(ErrorCode::BadBasis,
                        "outcome " + std::to_string(k) +
                            " vectors not orthonormal, residual " + format_real(ortho),
                        ortho);
        }
        for (const auto &v : vectors) {
            const double defect = range_defect(pair.projector, v);
            if (defect > tol) {
                throw Error(on_range == RangeFailure::BadBasis
                                ? ErrorCode::BadBasis
                                : ErrorCode::SubspaceViolation,
                            "vector leaves eigenspace of outcome " +
                                std::to_string(k) + " by " + format_real(defect),
                            defect);
            }
        }
    }
}

} // namespace

double OutcomeDistribution::total() const noexcept {
    double sum = 0.0;
    for (const auto &o : outcomes) {
        sum += o.probability;
    }
    return sum;
}

OutcomeDistribution born(const Observable &obs, const DensityOperator &z,
                         double tol) {
    require_dims(obs, z);
    OutcomeDistribution dist;
    dist.outcomes.reserve(obs.size());
    for (const auto &pair : obs.pairs()) {
        double w = trace_of_product(pair.projector, z.matrix()).real();
        if (w < -tol || w > 1.0 + tol) {
            throw Error(ErrorCode::InvalidState,
                        "Born weight " + format_real(w) + " outside [0, 1]", w);
        }
        w = std::clamp(w, 0.0, 1.0);
        dist.outcomes.push_back({pair.eigenvalue, w});
    }
    const double total = dist.total();
    if (std::abs(total - 1.0) > tol) {
        throw Error(ErrorCode::InvalidState,
                    "Born weights sum to " + format_real(total), total);
    }
    return dist;
}

SubensembleState lueders_select(const Observable &obs, std::size_t k,
                                const DensityOperator &z) {
    require_dims(obs, z);
    const auto &p = obs.projector(k);
    return SubensembleState(hermitian_part(p * z.matrix() * p));
}

DensityOperator lueders_aggregate(const Observable &obs,
                                  const DensityOperator &z) {
    require_dims(obs, z);
    ComplexMatrix acc(obs.dim());
    for (std::size_t k = 0; k < obs.size(); ++k) {
        acc += lueders_select(obs, k, z).matrix();
    }
    return DensityOperator::assume_valid(std::move(acc));
}

DensityOperator von_neumann_aggregate(const Observable &obs,
                                      const DensityOperator &z,
                                      const std::optional<BasisChoice> &basis,
                                      double tol) {
    require_dims(obs, z);
    std::vector<Vector> flat;
    if (basis) {
        check_basis_choice(obs, *basis, tol, RangeFailure::BadBasis);
        for (const auto &group : *basis) {
            flat.insert(flat.end(), group.begin(), group.end());
        }
    } else {
        flat = obs.flat_basis();
    }
    ComplexMatrix acc(obs.dim());
    for (const auto &psi : flat) {
        // P[ψ] Z P[ψ] = ⟨ψ, Zψ⟩ P[ψ]
        const double weight = inner(psi, z.matrix() * psi).real();
        acc += Complex(weight) * ComplexMatrix::outer(psi, psi);
    }
    return DensityOperator::assume_valid(hermitian_part(acc));
}

BasisChoice split_by_outcome(const Observable &obs,
                             std::span<const Vector> vectors) {
    if (vectors.size() != obs.dim()) {
        throw Error(ErrorCode::BadBasis,
                    "need " + std::to_string(obs.dim()) + " basis vectors, got " +
                        std::to_string(vectors.size()));
    }
    BasisChoice out;
    std::size_t offset = 0;
    for (const auto &pair : obs.pairs()) {
        out.emplace_back(vectors.begin() + static_cast<std::ptrdiff_t>(offset),
                         vectors.begin() +
                             static_cast<std::ptrdiff_t>(offset + pair.multiplicity));
        offset += pair.multiplicity;
    }
    return out;
}

const ComplexMatrix &ThetaFamily::op(std::size_t k) const {
    if (k >= operators_.size()) {
        throw Error(ErrorCode::BadOutcomeIndex,
                    "outcome " + std::to_string(k) + " of " +
                        std::to_string(operators_.size()));
    }
    return operators_[k];
}

ThetaResiduals theta_family_residuals(const ThetaFamily &fam) {
    ThetaResiduals r{0.0, 0.0};
    const auto &obs = fam.observable();
    const ComplexMatrix zero(fam.dim());
    for (std::size_t k = 0; k < fam.size(); ++k) {
        const auto &tk = fam.op(k);
        for (std::size_t kp = 0; kp < fam.size(); ++kp) {
            const auto &tkp = fam.op(kp);
            const ComplexMatrix &expected = k == kp ? obs.projector(k) : zero;
            r.adjoint_products =
                std::max({r.adjoint_products,
                          max_abs_diff(tk.adjoint() * tkp, expected),
                          max_abs_diff(tkp * tk.adjoint(), expected)});
            const ComplexMatrix &action = k == kp ? tk : zero;
            r.projector_action = std::max(
                r.projector_action, max_abs_diff(tk * obs.projector(kp), action));
        }
    }
    return r;
}

ThetaFamily make_theta_family(const Observable &obs, const BasisChoice &targets,
                              double tol) {
    check_basis_choice(obs, targets, tol, RangeFailure::SubspaceViolation);
    std::vector<ComplexMatrix> ops;
    ops.reserve(obs.size());
    for (std::size_t k = 0; k < obs.size(); ++k) {
        const auto &psi = obs.pair(k).basis;
        ComplexMatrix theta(obs.dim());
        for (std::size_t s = 0; s < psi.size(); ++s) {
            theta += ComplexMatrix::outer(targets[k][s], psi[s]);
        }
        ops.push_back(std::move(theta));
    }
    ThetaFamily fam(obs, std::move(ops));
    const auto res = theta_family_residuals(fam);
    const double worst = std::max(res.adjoint_products, res.projector_action);
    if (worst > 10.0 * tol) {
        throw Error(ErrorCode::BadBasis,
                    "measurement operators miss their algebraic identities by " +
                        format_real(worst),
                    worst);
    }
    return fam;
}

ThetaFamily lueders_family(const Observable &obs) {
    BasisChoice same;
    for (const auto &pair : obs.pairs()) {
        same.push_back(pair.basis);
    }
    return make_theta_family(obs, same);
}

SubensembleState theta_select(const ThetaFamily &fam, std::size_t k,
                              const DensityOperator &z) {
    require_dims(fam.observable(), z);
    return SubensembleState(hermitian_part(sandwich(fam.op(k), z.matrix())));
}

DensityOperator theta_aggregate(const ThetaFamily &fam,
                                const DensityOperator &z) {
    require_dims(fam.observable(), z);
    ComplexMatrix acc(fam.dim());
    for (std::size_t k = 0; k < fam.size(); ++k) {
        acc += theta_select(fam, k, z).matrix();
    }
    return DensityOperator::assume_valid(std::move(acc));
}

} // namespace qmeasure
