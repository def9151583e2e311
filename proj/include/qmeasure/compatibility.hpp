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
#include <optional>
#include <string_view>

#include "qmeasure/channels.hpp"
#include "qmeasure/matrix.hpp"
#include "qmeasure/observables.hpp"
#include "qmeasure/states.hpp"

namespace qmeasure {

/// Outcome of a residual test with a dead band: residual < tol/10 holds,
/// residual > 10·tol fails, anything between is reported as indeterminate.
enum class Verdict { Holds, Fails, Indeterminate };

std::string_view to_string(Verdict v) noexcept;
Verdict classify_residual(double residual, double tol) noexcept;

/// How a "for every state Z" quantifier is discharged.
enum class CheckMode {
    Exact,   // the equivalent operator identity
    Sampled, // direct evaluation on seeded random full-rank states
};

struct SampleConfig {
    double tol = kDefaultTol;
    std::size_t samples = 100;
    std::uint64_t seed = 0;
};

/// Where a condition is violated most: outcome indices (k of R, j of S,
/// l the later R outcome for the first condition) and a state exposing it.
struct Witness {
    std::size_t k = 0;
    std::size_t j = 0;
    std::optional<std::size_t> l;
    std::optional<DensityOperator> state;
};

struct ConditionResult {
    Verdict verdict;
    double residual;
    Witness witness;

    [[nodiscard]] bool holds() const noexcept { return verdict == Verdict::Holds; }
};

/// P̃_j P_k Z P_k P̃_j: select r_k of R, then s_j of S.
SubensembleState sequential_select(const Observable &r, std::size_t k,
                                   const Observable &s, std::size_t j,
                                   const DensityOperator &z);

/**
 * First compatibility condition: after selecting r_k and then s_j, a
 * repeated R measurement yields r_k with certainty, for every state.
 *
 * Exact mode checks P_k P̃_j P_l P̃_j P_k = 0 for all k, j and l ≠ k.
 * Sampled mode evaluates Tr(P̃_j P_k Z P_k P̃_j P_l) on random states.
 */
ConditionResult condition1_holds(const Observable &r, const Observable &s,
                                 CheckMode mode, const SampleConfig &config = {});

/**
 * Second compatibility condition: a non-selective R measurement leaves
 * the S statistics unchanged.
 *
 * Exact mode checks Σ_k P_k P̃_j P_k = P̃_j for all j. Sampled mode
 * compares Tr(P̃_j Σ_k P_k Z P_k) with Tr(P̃_j Z) on random states.
 */
ConditionResult condition2_holds(const Observable &r, const Observable &s,
                                 CheckMode mode, const SampleConfig &config = {});

/// Residuals of the intermediate projector identities that take the first
/// condition to commutativity.
struct ProjectorChainResiduals {
    double cross;             // max ‖P_l P̃_j P_k‖, l ≠ k
    double left_absorption;   // max ‖P_l P̃_j − P_l P̃_j P_l‖
    double right_absorption;  // max ‖P̃_j P_l − P_l P̃_j P_l‖
    double projector_commute; // max ‖P̃_j P_l − P_l P̃_j‖
};

ProjectorChainResiduals projector_chain_residuals(const Observable &r,
                                                  const Observable &s);

struct LemmaResult {
    bool holds;
    /// max over standard basis x of ‖BCx‖² − ‖B‖_op ⟨x, C*BC x⟩
    double worst_slack;
    double bc_norm;  // ‖BC‖_max
    double cbc_norm; // ‖C*BC‖_max
};

/// Cauchy–Schwarz bound ‖BCx‖² ≤ ‖B‖_op ⟨x, C*BC x⟩ (+ tol) over the
/// standard basis, for positive Hermitian B. Throws NotPositive.
LemmaResult lemma_check(const ComplexMatrix &b, const ComplexMatrix &c,
                        double tol = kDefaultTol);

/// Same eigenvalues, projectors U* P_k U. Throws NotUnitary.
Observable heisenberg_observable(const Observable &r, const ComplexMatrix &u,
                                 double tol = kDefaultTol);

enum class ModeSelection { Exact, Sampled, Both };

struct CompatConfig {
    double tol = kDefaultTol;
    ModeSelection mode = ModeSelection::Both;
    std::size_t samples = 100;
    std::uint64_t seed = 0;
};

struct CompatReport {
    Verdict condition1;
    Verdict condition2;
    Verdict commute;
    double max_residual_c1;
    double max_residual_c2;
    double commutator_residual; // ‖RS − SR‖_max of the (evolved) pair
    std::optional<ConditionResult> c1_exact;
    std::optional<ConditionResult> c1_sampled;
    std::optional<ConditionResult> c2_exact;
    std::optional<ConditionResult> c2_sampled;
    /// Worst violation among the condition checks, when any fails.
    std::optional<Witness> witness;
};

/**
 * Evolves R by U1 and S by U2 (Heisenberg picture) when given, then runs
 * both conditions in the configured modes and the commutator test.
 * Throws VerdictDisagreement when any two decisive verdicts differ.
 */
CompatReport compat_report(const Observable &r, const Observable &s,
                           const std::optional<ComplexMatrix> &u1,
                           const std::optional<ComplexMatrix> &u2,
                           const CompatConfig &config = {});

/// First condition with measurement operators in place of projectors:
/// Tr(Φ_j Θ_k Z Θ_k* Φ_j* P_l) = 0 for l ≠ k.
ConditionResult theta_condition1(const ThetaFamily &r, const ThetaFamily &s,
                                 CheckMode mode, const SampleConfig &config = {});
/// Second condition with the R channel generalised:
/// Σ_k Θ_k* P̃_j Θ_k = P̃_j.
ConditionResult theta_condition2(const ThetaFamily &r, const ThetaFamily &s,
                                 CheckMode mode, const SampleConfig &config = {});

} // namespace qmeasure
