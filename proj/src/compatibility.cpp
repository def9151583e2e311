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

#include "qmeasure/compatibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "qmeasure/error.hpp"
#include "qmeasure/linalg.hpp"
#include "qmeasure/matrix_io.hpp"
#include "qmeasure/random.hpp"

namespace qmeasure {

namespace {

// The projector and generalised variants of both conditions differ only in
// which operators implement the R and S selections, so they share one
// implementation over operator lists.
struct Channels {
    const std::vector<ComplexMatrix> &r_ops; // A_k: P_k or Θ_k
    const std::vector<ComplexMatrix> &s_ops; // B_j: P̃_j or Φ_j
    const Observable &r;                     // supplies P_l
    const Observable &s;                     // supplies P̃_j
};

std::vector<ComplexMatrix> projectors_of(const Observable &obs) {
    std::vector<ComplexMatrix> out;
    out.reserve(obs.size());
    for (const auto &p : obs.pairs()) {
        out.push_back(p.projector);
    }
    return out;
}

void require_same(const Observable &r, const Observable &s) {
    if (r.dim() != s.dim()) {
        throw Error(ErrorCode::DimMismatch,
                    "observables of dim " + std::to_string(r.dim()) + " and " +
                        std::to_string(s.dim()));
    }
}

DensityOperator dominant_state(const ComplexMatrix &residual) {
    const auto eig = eig_hermitian(hermitian_part(residual), 1.0);
    std::size_t best = 0;
    for (std::size_t i = 1; i < eig.values.size(); ++i) {
        if (std::abs(eig.values[i]) > std::abs(eig.values[best])) {
            best = i;
        }
    }
    return from_pure(eig.vectors[best]);
}

DensityOperator sample_state(std::size_t dim, const SampleConfig &config,
                             std::size_t index) {
    return random_density(dim, dim, derive_seed(config.seed, index));
}

ConditionResult first_condition(const Channels &ch, CheckMode mode,
                                const SampleConfig &config) {
    const std::size_t nk = ch.r_ops.size();
    const std::size_t nj = ch.s_ops.size();
    const std::size_t n = ch.r.dim();
    double worst = 0.0;
    Witness witness;
    if (mode == CheckMode::Exact) {
        ComplexMatrix worst_matrix(n);
        for (std::size_t k = 0; k < nk; ++k) {
            for (std::size_t j = 0; j < nj; ++j) {
                const ComplexMatrix chain = ch.s_ops[j] * ch.r_ops[k];
                const ComplexMatrix chain_adj = chain.adjoint();
                for (std::size_t l = 0; l < nk; ++l) {
                    if (l == k) {
                        continue;
                    }
                    ComplexMatrix m = chain_adj * ch.r.projector(l) * chain;
                    const double res = m.max_abs();
                    if (res > worst) {
                        worst = res;
                        witness.k = k;
                        witness.j = j;
                        witness.l = l;
                        worst_matrix = std::move(m);
                    }
                }
            }
        }
        const Verdict v = classify_residual(worst, config.tol);
        if (v != Verdict::Holds) {
            witness.state = dominant_state(worst_matrix);
        }
        return {v, worst, witness};
    }
    for (std::size_t sample = 0; sample < config.samples; ++sample) {
        const auto z = sample_state(n, config, sample);
        for (std::size_t k = 0; k < nk; ++k) {
            const ComplexMatrix after_r = sandwich(ch.r_ops[k], z.matrix());
            for (std::size_t j = 0; j < nj; ++j) {
                const ComplexMatrix after_s = sandwich(ch.s_ops[j], after_r);
                for (std::size_t l = 0; l < nk; ++l) {
                    if (l == k) {
                        continue;
                    }
                    const double res =
                        std::abs(trace_of_product(after_s, ch.r.projector(l)));
                    if (res > worst) {
                        worst = res;
                        witness.k = k;
                        witness.j = j;
                        witness.l = l;
                        witness.state = z;
                    }
                }
            }
        }
    }
    const Verdict v = classify_residual(worst, config.tol);
    if (v == Verdict::Holds) {
        witness.state.reset();
    }
    return {v, worst, witness};
}

ConditionResult second_condition(const Channels &ch, CheckMode mode,
                                 const SampleConfig &config) {
    const std::size_t nk = ch.r_ops.size();
    const std::size_t nj = ch.s.size();
    const std::size_t n = ch.r.dim();
    double worst = 0.0;
    Witness witness;
    if (mode == CheckMode::Exact) {
        ComplexMatrix worst_matrix(n);
        for (std::size_t j = 0; j < nj; ++j) {
            const auto &pj = ch.s.projector(j);
            ComplexMatrix diff(n);
            for (std::size_t k = 0; k < nk; ++k) {
                diff += ch.r_ops[k].adjoint() * pj * ch.r_ops[k];
            }
            diff -= pj;
            const double res = diff.max_abs();
            if (res > worst) {
                worst = res;
                witness.j = j;
                worst_matrix = std::move(diff);
            }
        }
        const Verdict v = classify_residual(worst, config.tol);
        if (v != Verdict::Holds) {
            witness.state = dominant_state(worst_matrix);
        }
        return {v, worst, witness};
    }
    for (std::size_t sample = 0; sample < config.samples; ++sample) {
        const auto z = sample_state(n, config, sample);
        ComplexMatrix after_r(n);
        for (std::size_t k = 0; k < nk; ++k) {
            after_r += sandwich(ch.r_ops[k], z.matrix());
        }
        for (std::size_t j = 0; j < nj; ++j) {
            const auto &pj = ch.s.projector(j);
            const double res = std::abs(trace_of_product(pj, after_r).real() -
                                        trace_of_product(pj, z.matrix()).real());
            if (res > worst) {
                worst = res;
                witness.j = j;
                witness.state = z;
            }
        }
    }
    const Verdict v = classify_residual(worst, config.tol);
    if (v == Verdict::Holds) {
        witness.state.reset();
    }
    return {v, worst, witness};
}

// Exact and sampled runs of one condition must not contradict each other.
Verdict combine(const std::optional<ConditionResult> &a,
                const std::optional<ConditionResult> &b, const char *name) {
    if (!a) {
        return b->verdict;
    }
    if (!b) {
        return a->verdict;
    }
    if ((a->verdict == Verdict::Holds && b->verdict == Verdict::Fails) ||
        (a->verdict == Verdict::Fails && b->verdict == Verdict::Holds)) {
        throw Error(ErrorCode::VerdictDisagreement,
                    std::string(name) + ": exact and sampled modes disagree");
    }
    if (a->verdict == Verdict::Indeterminate || b->verdict == Verdict::Indeterminate) {
        return Verdict::Indeterminate;
    }
    return a->verdict;
}

} // namespace

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
    case Verdict::Holds: return "true";
    case Verdict::Fails: return "false";
    case Verdict::Indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

Verdict classify_residual(double residual, double tol) noexcept {
    if (residual < tol / 10.0) {
        return Verdict::Holds;
    }
    if (residual > 10.0 * tol) {
        return Verdict::Fails;
    }
    return Verdict::Indeterminate;
}

SubensembleState sequential_select(const Observable &r, std::size_t k,
                                   const Observable &s, std::size_t j,
                                   const DensityOperator &z) {
    require_same(r, s);
    const auto first = lueders_select(r, k, z);
    const auto &pj = s.projector(j);
    return SubensembleState(hermitian_part(pj * first.matrix() * pj));
}

ConditionResult condition1_holds(const Observable &r, const Observable &s,
                                 CheckMode mode, const SampleConfig &config) {
    require_same(r, s);
    const auto r_ops = projectors_of(r);
    const auto s_ops = projectors_of(s);
    return first_condition({r_ops, s_ops, r, s}, mode, config);
}

ConditionResult condition2_holds(const Observable &r, const Observable &s,
                                 CheckMode mode, const SampleConfig &config) {
    require_same(r, s);
    const auto r_ops = projectors_of(r);
    const auto s_ops = projectors_of(s);
    return second_condition({r_ops, s_ops, r, s}, mode, config);
}

ConditionResult theta_condition1(const ThetaFamily &r, const ThetaFamily &s,
                                 CheckMode mode, const SampleConfig &config) {
    require_same(r.observable(), s.observable());
    return first_condition({r.operators(), s.operators(), r.observable(), s.observable()},
                           mode, config);
}

ConditionResult theta_condition2(const ThetaFamily &r, const ThetaFamily &s,
                                 CheckMode mode, const SampleConfig &config) {
    require_same(r.observable(), s.observable());
    return second_condition({r.operators(), s.operators(), r.observable(), s.observable()},
                            mode, config);
}

ProjectorChainResiduals projector_chain_residuals(const Observable &r,
                                                  const Observable &s) {
    require_same(r, s);
    ProjectorChainResiduals out{0.0, 0.0, 0.0, 0.0};
    for (std::size_t l = 0; l < r.size(); ++l) {
        const auto &pl = r.projector(l);
        for (std::size_t j = 0; j < s.size(); ++j) {
            const auto &pj = s.projector(j);
            const ComplexMatrix left = pl * pj;
            const ComplexMatrix right = pj * pl;
            const ComplexMatrix middle = left * pl;
            for (std::size_t k = 0; k < r.size(); ++k) {
                if (k != l) {
                    out.cross = std::max(out.cross, (left * r.projector(k)).max_abs());
                }
            }
            out.left_absorption = std::max(out.left_absorption, max_abs_diff(left, middle));
            out.right_absorption = std::max(out.right_absorption, max_abs_diff(right, middle));
            out.projector_commute = std::max(out.projector_commute, max_abs_diff(left, right));
        }
    }
    return out;
}

LemmaResult lemma_check(const ComplexMatrix &b, const ComplexMatrix &c,
                        double tol) {
    require_same_dim(b, c, "lemma operands");
    const auto eig = eig_hermitian(b, tol);
    if (eig.values.front() < -tol) {
        throw Error(ErrorCode::NotPositive,
                    "B has eigenvalue " + format_real(eig.values.front()),
                    eig.values.front());
    }
    const double op_norm = std::max(0.0, eig.values.back());
    const ComplexMatrix bc = b * c;
    const ComplexMatrix cbc = c.adjoint() * bc;
    LemmaResult out{true, -std::numeric_limits<double>::infinity(), bc.max_abs(),
                    cbc.max_abs()};
    for (std::size_t x = 0; x < b.dim(); ++x) {
        double lhs = 0.0;
        for (std::size_t i = 0; i < b.dim(); ++i) {
            lhs += std::norm(bc(i, x));
        }
        const double rhs = op_norm * cbc(x, x).real();
        out.worst_slack = std::max(out.worst_slack, lhs - rhs);
    }
    out.holds = out.worst_slack <= tol;
    return out;
}

Observable heisenberg_observable(const Observable &r, const ComplexMatrix &u,
                                 double tol) {
    require_same_dim(r.projector(0), u, "Heisenberg evolution");
    if (!u.all_finite()) {
        throw Error(ErrorCode::NotUnitary, "non-finite entries");
    }
    const double defect = unitarity_residual(u);
    if (defect > tol) {
        throw Error(ErrorCode::NotUnitary,
                    "‖U*U − 1‖_max = " + format_real(defect), defect);
    }
    const ComplexMatrix u_adj = u.adjoint();
    std::vector<std::pair<double, ComplexMatrix>> pairs;
    pairs.reserve(r.size());
    for (const auto &p : r.pairs()) {
        pairs.emplace_back(p.eigenvalue, hermitian_part(u_adj * p.projector * u));
    }
    return Observable::from_spectral(std::move(pairs), tol + 4.0 * defect);
}

CompatReport compat_report(const Observable &r, const Observable &s,
                           const std::optional<ComplexMatrix> &u1,
                           const std::optional<ComplexMatrix> &u2,
                           const CompatConfig &config) {
    require_same(r, s);
    const Observable r_t = u1 ? heisenberg_observable(r, *u1, config.tol) : r;
    const Observable s_t = u2 ? heisenberg_observable(s, *u2, config.tol) : s;

    const SampleConfig sampling{config.tol, config.samples, config.seed};
    CompatReport report{};
    if (config.mode != ModeSelection::Sampled) {
        report.c1_exact = condition1_holds(r_t, s_t, CheckMode::Exact, sampling);
        report.c2_exact = condition2_holds(r_t, s_t, CheckMode::Exact, sampling);
    }
    if (config.mode != ModeSelection::Exact) {
        report.c1_sampled = condition1_holds(r_t, s_t, CheckMode::Sampled, sampling);
        report.c2_sampled = condition2_holds(r_t, s_t, CheckMode::Sampled, sampling);
    }
    report.condition1 = combine(report.c1_exact, report.c1_sampled, "condition 1");
    report.condition2 = combine(report.c2_exact, report.c2_sampled, "condition 2");

    const auto comm = commutes(reconstruct(r_t), reconstruct(s_t), config.tol);
    report.commutator_residual = comm.residual;
    report.commute = classify_residual(comm.residual, config.tol);

    const ConditionResult *worst = nullptr;
    for (const auto *res : {&report.c1_exact, &report.c1_sampled, &report.c2_exact,
                            &report.c2_sampled}) {
        if (!*res) {
            continue;
        }
        const bool is_c1 = res == &report.c1_exact || res == &report.c1_sampled;
        double &slot = is_c1 ? report.max_residual_c1 : report.max_residual_c2;
        slot = std::max(slot, (*res)->residual);
        if ((*res)->verdict != Verdict::Holds &&
            (worst == nullptr || (*res)->residual > worst->residual)) {
            worst = &**res;
        }
    }
    if (worst != nullptr) {
        report.witness = worst->witness;
    }

    const Verdict verdicts[] = {report.condition1, report.condition2, report.commute};
    const bool any_holds = std::find(std::begin(verdicts), std::end(verdicts),
                                     Verdict::Holds) != std::end(verdicts);
    const bool any_fails = std::find(std::begin(verdicts), std::end(verdicts),
                                     Verdict::Fails) != std::end(verdicts);
    if (any_holds && any_fails) {
        throw Error(ErrorCode::VerdictDisagreement,
                    std::string("c1=") + std::string(to_string(report.condition1)) +
                        " c2=" + std::string(to_string(report.condition2)) +
                        " comm=" + std::string(to_string(report.commute)));
    }
    return report;
}

} // namespace qmeasure
