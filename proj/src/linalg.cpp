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

#include "qmeasure/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qmeasure/error.hpp"
#include "qmeasure/matrix_io.hpp"

namespace qmeasure {

namespace {

struct Rotation {
    double c;
    double s;
    Complex phase; // e^{-iφ} where a_pq = |a_pq| e^{iφ}
};

// Annihilates a(p, q) with V = diag(1, e^{-iφ}) · [[c, s], [-s, c]] acting on
// the (p, q) plane: A <- V* A V, W <- W V.
void rotate(ComplexMatrix &a, ComplexMatrix &w, std::size_t p, std::size_t q,
            const Rotation &rot) {
    const std::size_t n = a.dim();
    const Complex vpp = rot.c;
    const Complex vpq = rot.s;
    const Complex vqp = -rot.s * rot.phase;
    const Complex vqq = rot.c * rot.phase;
    for (std::size_t k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = akp * vpp + akq * vqp;
        a(k, q) = akp * vpq + akq * vqq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = std::conj(vpp) * apk + std::conj(vqp) * aqk;
        a(q, k) = std::conj(vpq) * apk + std::conj(vqq) * aqk;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const Complex wkp = w(k, p);
        const Complex wkq = w(k, q);
        w(k, p) = wkp * vpp + wkq * vqp;
        w(k, q) = wkp * vpq + wkq * vqq;
    }
}

double off_diagonal_norm2(const ComplexMatrix &a) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = i + 1; j < a.dim(); ++j) {
            acc += std::norm(a(i, j));
        }
    }
    return acc;
}

} // namespace

void fix_phase(Vector &v) {
    const double threshold = 1e-8 * norm(v);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double mag = std::abs(v[i]);
        if (mag > threshold) {
            const Complex phase = std::conj(v[i]) / mag;
            for (auto &x : v) {
                x *= phase;
            }
            v[i] = mag;
            return;
        }
    }
}

std::vector<Vector> canonical_basis(const ComplexMatrix &projector,
                                    std::size_t rank) {
    const std::size_t n = projector.dim();
    std::vector<Vector> basis;
    basis.reserve(rank);
    // A rank-r projector has Σ_j ‖P e_j‖² = r, so some untouched column
    // always keeps residual² ≥ 1/n while basis vectors are still missing.
    const double accept = 0.5 / static_cast<double>(n);
    for (std::size_t j = 0; j < n && basis.size() < rank; ++j) {
        Vector r = projector.column(j);
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto &u : basis) {
                const Complex proj = inner(u, r);
                for (std::size_t i = 0; i < n; ++i) {
                    r[i] -= proj * u[i];
                }
            }
        }
        const double len = norm(r);
        if (len * len < accept) {
            continue;
        }
        for (auto &x : r) {
            x /= len;
        }
        fix_phase(r);
        basis.push_back(std::move(r));
    }
    if (basis.size() != rank) {
        throw Error(ErrorCode::NoConvergence,
                    "could not extract " + std::to_string(rank) +
                        " basis vectors from projector");
    }
    return basis;
}

std::vector<std::vector<std::size_t>>
cluster_eigenvalues(std::span<const double> values, double cluster_tol) {
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!groups.empty()) {
            const double prev = values[i - 1];
            const double scale =
                std::max({1.0, std::abs(prev), std::abs(values[i])});
            if (values[i] - prev <= cluster_tol * scale) {
                groups.back().push_back(i);
                continue;
            }
        }
        groups.push_back({i});
    }
    return groups;
}

EigenSystem eig_hermitian(const ComplexMatrix &m, double tol,
                          double cluster_tol) {
    const std::size_t n = m.dim();
    if (n == 0) {
        throw Error(ErrorCode::BadDim, "eigendecomposition of empty matrix");
    }
    if (!m.all_finite()) {
        throw Error(ErrorCode::NotHermitian, "matrix has non-finite entries");
    }
    const double herm = hermiticity_residual(m);
    if (herm > tol) {
        throw Error(ErrorCode::NotHermitian,
                    "‖M − M*‖_max = " + format_real(herm), herm);
    }

    ComplexMatrix a = hermitian_part(m);
    ComplexMatrix w = ComplexMatrix::identity(n);

    const std::size_t max_sweeps = 100 * n * n;
    bool converged = false;
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        const double off = off_diagonal_norm2(a);
        if (off == 0.0) {
            converged = true;
            break;
        }
        // Early sweeps skip small pivots; later sweeps zero out entries
        // that no longer change the diagonal.
        const double threshold =
            sweep < 3 ? 0.2 * std::sqrt(off) / static_cast<double>(n * n) : 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double g = std::abs(a(p, q));
                if (g == 0.0) {
                    continue;
                }
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                if (sweep > 3 && std::abs(app) + 100.0 * g == std::abs(app) &&
                    std::abs(aqq) + 100.0 * g == std::abs(aqq)) {
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    continue;
                }
                if (g <= threshold) {
                    continue;
                }
                const double h = aqq - app;
                double t;
                if (std::abs(h) + 100.0 * g == std::abs(h)) {
                    t = g / h;
                } else {
                    const double theta = 0.5 * h / g;
                    t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                    if (theta < 0.0) {
                        t = -t;
                    }
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const Rotation rot{c, t * c, std::conj(a(p, q)) / g};
                rotate(a, w, p, q, rot);
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = app - t * g;
                a(q, q) = aqq + t * g;
            }
        }
    }
    if (!converged) {
        throw Error(ErrorCode::NoConvergence,
                    "Jacobi sweeps exceeded 100·dim² for dim " +
                        std::to_string(n));
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) {
                         return a(x, x).real() < a(y, y).real();
                     });

    EigenSystem out;
    out.values.reserve(n);
    std::vector<Vector> raw;
    raw.reserve(n);
    for (std::size_t idx : order) {
        out.values.push_back(a(idx, idx).real());
        raw.push_back(w.column(idx));
    }

    out.vectors.resize(n);
    for (const auto &group : cluster_eigenvalues(out.values, cluster_tol)) {
        ComplexMatrix p(n);
        for (std::size_t idx : group) {
            p += ComplexMatrix::outer(raw[idx], raw[idx]);
        }
        auto basis = canonical_basis(p, group.size());
        for (std::size_t g = 0; g < group.size(); ++g) {
            out.vectors[group[g]] = std::move(basis[g]);
        }
    }
    return out;
}

double orthonormality_residual(std::span<const Vector> vectors) {
    double worst = 0.0;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        for (std::size_t j = i; j < vectors.size(); ++j) {
            const Complex ip = inner(vectors[i], vectors[j]);
            const double expected = i == j ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(ip - expected));
        }
    }
    return worst;
}

ComplexMatrix projector_from_basis(std::span<const Vector> vectors,
                                   double tol) {
    if (vectors.empty()) {
        throw Error(ErrorCode::NotOrthonormal, "empty vector list");
    }
    const std::size_t n = vectors.front().size();
    for (const auto &v : vectors) {
        if (v.size() != n) {
            throw Error(ErrorCode::DimMismatch, "basis vectors of unequal length");
        }
    }
    const double residual = orthonormality_residual(vectors);
    if (residual > tol) {
        throw Error(ErrorCode::NotOrthonormal,
                    "max |⟨v_i, v_j⟩ − δ_ij| = " + format_real(residual),
                    residual);
    }
    ComplexMatrix p(n);
    for (const auto &v : vectors) {
        p += ComplexMatrix::outer(v, v);
    }
    return p;
}

} // namespace qmeasure
