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

#include "qmeasure/constraints.hpp"

#include <algorithm>
#include <string>

#include "qmeasure/channels.hpp"
#include "qmeasure/error.hpp"
#include "qmeasure/linalg.hpp"
#include "qmeasure/matrix_io.hpp"
#include "qmeasure/random.hpp"

namespace qmeasure {

Constraint::Constraint(ComplexMatrix op, std::string label)
    : op_(std::move(op)), label_(std::move(label)) {
    if (op_.empty()) {
        throw Error(ErrorCode::BadDim, "empty constraint operator");
    }
    if (!op_.all_finite()) {
        throw Error(ErrorCode::InvalidSpectrum, "constraint has non-finite entries");
    }
}

ConstraintSet::ConstraintSet(std::vector<Constraint> members, double tol)
    : members_(std::move(members)) {
    for (std::size_t a = 0; a < members_.size(); ++a) {
        for (std::size_t b = a + 1; b < members_.size(); ++b) {
            const auto c = commutes(members_[a].op(), members_[b].op(), tol);
            if (!c.commutes) {
                throw Error(ErrorCode::IncompatibleConstraints,
                            "'" + members_[a].label() + "' and '" +
                                members_[b].label() + "' do not commute",
                            c.residual);
            }
        }
    }
}

ResidualCheck satisfies(const DensityOperator &z, const Constraint &n,
                        double tol) {
    require_same_dim(z.matrix(), n.op(), "constraint check");
    const double residual = (n.op() * z.matrix()).max_abs();
    return {residual <= tol, residual};
}

Measurability measurable_under(const Observable &r, const Constraint &n,
                               double tol) {
    require_same_dim(r.projector(0), n.op(), "measurability");
    Measurability m{true, 0.0, 0.0};
    for (const auto &p : r.pairs()) {
        m.projector_residual =
            std::max(m.projector_residual, commutes(p.projector, n.op(), tol).residual);
    }
    m.commutator_residual = commutes(reconstruct(r), n.op(), tol).residual;
    m.measurable = m.projector_residual <= tol && m.commutator_residual <= tol;
    return m;
}

Measurability measurable_under(const Observable &r, const ConstraintSet &set,
                               double tol) {
    Measurability all{true, 0.0, 0.0};
    for (const auto &n : set.members()) {
        const auto m = measurable_under(r, n, tol);
        all.measurable = all.measurable && m.measurable;
        all.projector_residual = std::max(all.projector_residual, m.projector_residual);
        all.commutator_residual = std::max(all.commutator_residual, m.commutator_residual);
    }
    return all;
}

std::vector<OutcomeResidual> preserves_constraint(const Observable &r,
                                                  const Constraint &n,
                                                  const DensityOperator &z,
                                                  double tol) {
    const auto input = satisfies(z, n, tol);
    if (!input.ok) {
        throw Error(ErrorCode::ConstraintViolatedOnInput,
                    "input state violates '" + n.label() + "' by " +
                        format_real(input.residual),
                    input.residual);
    }
    std::vector<OutcomeResidual> out;
    out.reserve(r.size());
    for (std::size_t k = 0; k < r.size(); ++k) {
        const auto branch = lueders_select(r, k, z);
        const double residual = (n.op() * branch.matrix()).max_abs();
        out.push_back({k, r.eigenvalue(k), branch.weight(), residual, residual <= tol});
    }
    return out;
}

ComplexMatrix swap_operator(std::size_t local_dim) {
    const std::size_t n = local_dim * local_dim;
    ComplexMatrix swap(n);
    for (std::size_t a = 0; a < local_dim; ++a) {
        for (std::size_t b = 0; b < local_dim; ++b) {
            swap(b * local_dim + a, a * local_dim + b) = 1.0;
        }
    }
    return swap;
}

Constraint make_exchange_constraint(std::size_t local_dim, bool symmetric) {
    if (local_dim < 2) {
        throw Error(ErrorCode::BadDim,
                    "exchange constraint needs local_dim >= 2, got " +
                        std::to_string(local_dim));
    }
    const std::size_t n = local_dim * local_dim;
    ComplexMatrix op = ComplexMatrix::identity(n);
    const ComplexMatrix swap = swap_operator(local_dim);
    if (symmetric) {
        op -= swap;
    } else {
        op += swap;
    }
    op *= 0.5;
    return Constraint(std::move(op),
                      symmetric ? "exchange-symmetric" : "exchange-antisymmetric");
}

DensityOperator random_constrained_state(const Constraint &n, std::size_t rank,
                                         std::uint64_t seed, double tol) {
    const std::size_t dim = n.dim();
    const auto eig = eig_hermitian(hermitian_part(n.op().adjoint() * n.op()), 1.0);
    std::vector<Vector> kernel;
    for (std::size_t i = 0; i < dim; ++i) {
        if (eig.values[i] <= tol) {
            kernel.push_back(eig.vectors[i]);
        }
    }
    if (kernel.empty()) {
        throw Error(ErrorCode::BadDim, "constraint '" + n.label() + "' has trivial kernel");
    }
    const ComplexMatrix q = projector_from_basis(kernel, 1e-8);
    constexpr std::size_t kMaxDraws = 1000;
    for (std::size_t attempt = 0; attempt < kMaxDraws; ++attempt) {
        const auto z = random_density(dim, rank, derive_seed(seed, attempt));
        const SubensembleState compressed(hermitian_part(q * z.matrix() * q));
        if (compressed.weight() < 1e-6) {
            continue;
        }
        return normalize(compressed, 1e-6);
    }
    throw Error(ErrorCode::NoConvergence,
                "no admissible draw for '" + n.label() + "'");
}

} // namespace qmeasure
