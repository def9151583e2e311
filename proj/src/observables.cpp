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

#include "qmeasure/observables.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "qmeasure/error.hpp"
#include "qmeasure/linalg.hpp"
#include "qmeasure/matrix_io.hpp"

namespace qmeasure {

const SpectralPair &Observable::pair(std::size_t k) const {
    if (k >= pairs_.size()) {
        throw Error(ErrorCode::BadOutcomeIndex,
                    "outcome " + std::to_string(k) + " of " +
                        std::to_string(pairs_.size()));
    }
    return pairs_[k];
}

std::vector<double> Observable::eigenvalues() const {
    std::vector<double> out;
    out.reserve(pairs_.size());
    for (const auto &p : pairs_) {
        out.push_back(p.eigenvalue);
    }
    return out;
}

bool Observable::non_degenerate() const noexcept {
    return std::all_of(pairs_.begin(), pairs_.end(),
                       [](const SpectralPair &p) { return p.simple(); });
}

std::vector<Vector> Observable::flat_basis() const {
    std::vector<Vector> out;
    out.reserve(dim_);
    for (const auto &p : pairs_) {
        out.insert(out.end(), p.basis.begin(), p.basis.end());
    }
    return out;
}

ProjectorFamilyResiduals projector_family_residuals(const Observable &obs) {
    ProjectorFamilyResiduals r{0.0, 0.0};
    ComplexMatrix sum(obs.dim());
    for (std::size_t j = 0; j < obs.size(); ++j) {
        const auto &pj = obs.projector(j);
        sum += pj;
        for (std::size_t k = j; k < obs.size(); ++k) {
            const auto &pk = obs.projector(k);
            const auto prod = pj * pk;
            const double res =
                j == k ? max_abs_diff(prod, pk) : prod.max_abs();
            r.orthogonality = std::max(r.orthogonality, res);
        }
    }
    r.completeness = max_abs_diff(sum, ComplexMatrix::identity(obs.dim()));
    return r;
}

Observable Observable::from_spectral(
    std::vector<std::pair<double, ComplexMatrix>> input, double tol) {
    if (input.empty()) {
        throw Error(ErrorCode::InvalidSpectrum, "no spectral pairs");
    }
    std::stable_sort(input.begin(), input.end(),
                     [](const auto &a, const auto &b) { return a.first < b.first; });
    const std::size_t n = input.front().second.dim();
    std::vector<SpectralPair> pairs;
    pairs.reserve(input.size());
    for (std::size_t k = 0; k < input.size(); ++k) {
        auto &[value, proj] = input[k];
        if (!std::isfinite(value)) {
            throw Error(ErrorCode::InvalidSpectrum, "non-finite eigenvalue");
        }
        if (k > 0 && !(value > input[k - 1].first)) {
            throw Error(ErrorCode::InvalidSpectrum,
                        "eigenvalue " + format_real(value) + " listed twice");
        }
        if (proj.dim() != n) {
            throw Error(ErrorCode::DimMismatch, "projectors of unequal dimension");
        }
        const double herm = hermiticity_residual(proj);
        const double idem = max_abs_diff(proj * proj, proj);
        if (herm > tol || idem > tol) {
            throw Error(ErrorCode::InvalidSpectrum,
                        "projector for eigenvalue " + format_real(value) +
                            " is not a Hermitian idempotent");
        }
        const double trace = proj.trace().real();
        const double rounded = std::round(trace);
        if (rounded < 1.0 || std::abs(trace - rounded) > tol) {
            throw Error(ErrorCode::InvalidSpectrum,
                        "projector trace " + format_real(trace) +
                            " is not a positive integer");
        }
        const auto mult = static_cast<std::size_t>(rounded);
        auto basis = canonical_basis(proj, mult);
        pairs.push_back({value, std::move(proj), mult, std::move(basis)});
    }
    Observable obs(n, std::move(pairs));
    const auto res = projector_family_residuals(obs);
    if (res.orthogonality > tol) {
        throw Error(ErrorCode::InvalidSpectrum,
                    "projectors not mutually orthogonal, residual " +
                        format_real(res.orthogonality),
                    res.orthogonality);
    }
    if (res.completeness > tol) {
        throw Error(ErrorCode::InvalidSpectrum,
                    "projectors do not sum to identity, residual " +
                        format_real(res.completeness),
                    res.completeness);
    }
    return obs;
}

Observable spectral_decompose(const ComplexMatrix &m, double cluster_tol,
                              double tol) {
    auto eig = eig_hermitian(m, tol, cluster_tol);
    std::vector<SpectralPair> pairs;
    for (const auto &group : cluster_eigenvalues(eig.values, cluster_tol)) {
        double mean = 0.0;
        std::vector<Vector> basis;
        basis.reserve(group.size());
        for (std::size_t idx : group) {
            mean += eig.values[idx];
            basis.push_back(std::move(eig.vectors[idx]));
        }
        mean /= static_cast<double>(group.size());
        auto proj = projector_from_basis(basis, tol);
        pairs.push_back({mean, std::move(proj), group.size(), std::move(basis)});
    }
    return Observable(m.dim(), std::move(pairs));
}

ComplexMatrix reconstruct(const Observable &obs) {
    ComplexMatrix out(obs.dim());
    for (const auto &p : obs.pairs()) {
        out += Complex(p.eigenvalue) * p.projector;
    }
    return out;
}

bool is_function_refinement(const Observable &fine, const Observable &coarse,
                            double tol) {
    if (fine.dim() != coarse.dim()) {
        throw Error(ErrorCode::DimMismatch, "refinement check");
    }
    for (const auto &cp : coarse.pairs()) {
        ComplexMatrix sum(fine.dim());
        for (const auto &fp : fine.pairs()) {
            // A fine projector belongs to the coarse one iff Q P = P.
            if (max_abs_diff(cp.projector * fp.projector, fp.projector) <= tol) {
                sum += fp.projector;
            }
        }
        if (max_abs_diff(sum, cp.projector) > tol) {
            return false;
        }
    }
    return true;
}

Observable parse_observable(std::string_view text, double cluster_tol,
                            double tol) {
    TextLines lines(text);
    const auto first = lines.peek();
    if (!first) {
        lines.fail("empty observable file");
    }
    const auto head = split_tokens(*first);
    if (head.empty() || head[0] != "spectral") {
        const auto m = parse_matrix(text);
        return spectral_decompose(m, cluster_tol, tol);
    }
    lines.next();
    std::size_t count = 0;
    if (head.size() != 2 || std::from_chars(head[1].data(),
                                            head[1].data() + head[1].size(),
                                            count).ec != std::errc{} ||
        count == 0) {
        lines.fail("expected 'spectral <count>'");
    }
    std::vector<std::pair<double, ComplexMatrix>> pairs;
    for (std::size_t k = 0; k < count; ++k) {
        const auto tokens = split_tokens(lines.expect("'eigenvalue <r>'"));
        std::optional<double> value;
        if (tokens.size() == 2 && tokens[0] == "eigenvalue") {
            value = parse_real(tokens[1]);
        }
        if (!value) {
            lines.fail("expected 'eigenvalue <r>'");
        }
        pairs.emplace_back(*value, read_matrix(lines));
    }
    if (lines.next()) {
        lines.fail("trailing content after spectral block");
    }
    return Observable::from_spectral(std::move(pairs), tol);
}

Observable load_observable_file(const std::filesystem::path &path,
                                double cluster_tol, double tol) {
    return parse_observable(read_text_file(path), cluster_tol, tol);
}

std::string format_spectral(const Observable &obs) {
    std::string out = "spectral " + std::to_string(obs.size()) + "\n";
    for (const auto &p : obs.pairs()) {
        out += "eigenvalue " + format_real(p.eigenvalue) + "\n";
        out += format_matrix(p.projector);
    }
    return out;
}

} // namespace qmeasure
