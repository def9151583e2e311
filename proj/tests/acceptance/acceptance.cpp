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

// Acceptance suite. Prints one PASS/FAIL line per criterion; with a
// criterion number as argument runs only that one. Exit status is 0 iff
// every criterion run passed.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "curated.hpp"
#include "qmeasure/qmeasure.hpp"

namespace {

using namespace qmeasure;

struct Result {
    bool pass;
    std::string detail;
};

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Observables with a repeated eigenvalue on odd draws.
Observable random_observable(std::size_t dim, Rng &rng, bool degenerate) {
    if (!degenerate) {
        return spectral_decompose(random_hermitian(dim, rng));
    }
    std::vector<double> d(dim);
    for (auto &x : d) {
        x = std::floor(3.0 * rng.uniform());
    }
    const auto u = random_unitary(dim, rng);
    return spectral_decompose(hermitian_part(u * ComplexMatrix::diagonal(d) * u.adjoint()));
}

double op_norm(const ComplexMatrix &b) {
    const auto es = eig_hermitian(b);
    return std::max(std::abs(es.values.front()), std::abs(es.values.back()));
}

Result channel_suite() {
    const auto start = std::chrono::steady_clock::now();
    std::size_t pairs = 0;
    double herm = 0;
    double min_eig = 0;
    double born_gap = 0;
    double sum_gap = 0;
    double trace_gap = 0;
    double purity_gap = 0;
    double idem_gap = 0;
    for (std::size_t dim = 2; dim <= 8; ++dim) {
        for (std::uint64_t i = 0; i < 200; ++i) {
            Rng rng(derive_seed(1000 + dim, i));
            const auto obs = random_observable(dim, rng, i % 2 == 1);
            const std::size_t rank = i % 3 == 0 ? 1 : 1 + i % dim;
            const auto z = random_density(dim, rank, derive_seed(2000 + dim, i));
            const auto dist = born(obs, z);
            ComplexMatrix sum(dim);
            for (std::size_t k = 0; k < obs.size(); ++k) {
                const auto sel = lueders_select(obs, k, z);
                const auto d = diagnose(sel.matrix());
                herm = std::max(herm, d.hermiticity_residual);
                min_eig = std::min(min_eig, d.min_eigenvalue);
                born_gap = std::max(born_gap,
                                    std::abs(sel.weight() - dist.outcomes[k].probability));
                sum += sel.matrix();
                if (rank == 1 && sel.weight() > 1e-6) {
                    purity_gap = std::max(purity_gap, std::abs(normalize(sel).purity() - 1));
                }
            }
            const auto agg = lueders_aggregate(obs, z);
            const auto d = diagnose(agg.matrix());
            herm = std::max(herm, d.hermiticity_residual);
            min_eig = std::min(min_eig, d.min_eigenvalue);
            sum_gap = std::max(sum_gap, max_abs_diff(sum, agg.matrix()));
            trace_gap = std::max(trace_gap, std::abs(agg.matrix().trace().real() - 1));
            idem_gap = std::max(
                idem_gap, max_abs_diff(lueders_aggregate(obs, agg).matrix(), agg.matrix()));
            ++pairs;
        }
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream os;
    os << pairs << " pairs; herm " << herm << ", min eig " << min_eig << ", born " << born_gap
       << ", sum " << sum_gap << ", trace " << trace_gap << ", purity " << purity_gap
       << ", idempotence " << idem_gap << ", " << seconds << " s";
    const bool pass = herm <= 1e-9 && min_eig >= -1e-9 && born_gap <= 1e-10 &&
                      sum_gap == 0.0 && trace_gap <= 1e-10 && purity_gap <= 1e-9 &&
                      idem_gap <= 1e-10 && seconds < 10.0;
    return {pass, os.str()};
}

Result special_case() {
    double vn_gap = 0;
    double formula_gap = 0;
    for (std::uint64_t i = 0; i < 50; ++i) {
        Rng rng(derive_seed(3000, i));
        const std::size_t dim = 2 + i % 7;
        const auto obs = spectral_decompose(random_hermitian(dim, rng));
        if (!obs.non_degenerate()) {
            return {false, "drew a degenerate observable"};
        }
        const auto z = random_density(dim, 1 + i % dim, derive_seed(3001, i));
        vn_gap = std::max(vn_gap, max_abs_diff(von_neumann_aggregate(obs, z).matrix(),
                                               lueders_aggregate(obs, z).matrix()));
        for (std::size_t k = 0; k < obs.size(); ++k) {
            const auto &psi = obs.pair(k).basis[0];
            const auto p = ComplexMatrix::outer(psi, psi);
            const auto formula = trace_of_product(p, z.matrix()) * p;
            formula_gap = std::max(
                formula_gap, max_abs_diff(lueders_select(obs, k, z).matrix(), formula));
        }
    }
    std::ostringstream os;
    os << "50 observables; von Neumann vs Lueders " << vn_gap << ", rank-one formula "
       << formula_gap;
    return {vn_gap <= 1e-10 && formula_gap <= 1e-10, os.str()};
}

Result degeneracy_divergence() {
    const auto obs = spectral_decompose(ComplexMatrix::diagonal({2, 2, 5}));
    const double a = 1.0 / std::sqrt(3.0);
    const auto z = from_pure(Vector{a, a, a});
    const auto sel = normalize(lueders_select(obs, 0, z));
    const auto vn = von_neumann_aggregate(obs, z);
    const double third = 1.0 / 3.0;
    const double vn_gap =
        max_abs_diff(vn.matrix(), ComplexMatrix::diagonal({third, third, third}));
    std::ostringstream os;
    os << "Tr(Z^2) select " << sel.purity() << ", von Neumann " << vn.purity()
       << ", diag gap " << vn_gap;
    return {std::abs(sel.purity() - 1) <= 1e-9 && std::abs(vn.purity() - third) <= 1e-9 &&
                vn_gap <= 1e-9,
            os.str()};
}

Result equivalence() {
    std::size_t total = 0;
    std::size_t commuting = 0;
    std::size_t mismatches = 0;
    const SampleConfig sc{kDefaultTol, 100, 7};
    for (std::size_t dim = 2; dim <= 8; ++dim) {
        for (const auto &p : testing::curated_pairs(dim, 32, 11)) {
            const auto comm = classify_residual(commutator(reconstruct(p.r), reconstruct(p.s)).max_abs(),
                                                kDefaultTol);
            commuting += comm == Verdict::Holds;
            for (const auto mode : {CheckMode::Exact, CheckMode::Sampled}) {
                mismatches += condition1_holds(p.r, p.s, mode, sc).verdict != comm;
                mismatches += condition2_holds(p.r, p.s, mode, sc).verdict != comm;
            }
            ++total;
        }
    }
    std::ostringstream os;
    os << total << " pairs (" << commuting << " commuting), " << 4 * total
       << " verdicts, " << mismatches << " mismatches";
    return {mismatches == 0 && commuting >= 30 * 7 && total - commuting >= 30 * 7, os.str()};
}

Result lemma() {
    double worst = -1e300;
    std::size_t violations = 0;
    for (std::uint64_t i = 0; i < 500; ++i) {
        Rng rng(derive_seed(5000, i));
        const std::size_t dim = 2 + i % 5;
        // Every third B is rank deficient.
        const auto g = ginibre(dim, rng);
        auto b = g * g.adjoint();
        if (i % 3 == 0) {
            const auto h = ginibre(dim, rng);
            Vector v = h.column(0);
            b = ComplexMatrix::outer(v, v);
        }
        const auto c = ginibre(dim, rng);
        const double bn = op_norm(b);
        const auto bc = b * c;
        const auto cbc = c.adjoint() * bc;
        for (std::size_t x = 0; x < dim; ++x) {
            const auto col = bc.column(x);
            const double lhs = norm(col) * norm(col);
            const double rhs = bn * cbc(x, x).real();
            worst = std::max(worst, lhs - rhs);
            violations += lhs > rhs + 1e-9;
        }
        violations += !lemma_check(b, c).holds;
    }
    std::ostringstream os;
    os << "500 pairs, worst slack " << worst << ", violations " << violations;
    return {violations == 0, os.str()};
}

Result heisenberg() {
    const auto r = spectral_decompose(ComplexMatrix::diagonal({1, -1}));
    const ComplexMatrix h{{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}};
    const auto rot = compat_report(r, r, std::nullopt, h);
    const auto id = compat_report(r, r, std::nullopt, ComplexMatrix::identity(2));
    const bool rot_ok = rot.condition1 == Verdict::Fails && rot.condition2 == Verdict::Fails &&
                        rot.commute == Verdict::Fails;
    const bool id_ok = id.condition1 == Verdict::Holds && id.condition2 == Verdict::Holds &&
                       id.commute == Verdict::Holds;
    std::ostringstream os;
    os << "Hadamard: c1=" << to_string(rot.condition1) << " c2=" << to_string(rot.condition2)
       << " comm=" << to_string(rot.commute) << "; identity: c1=" << to_string(id.condition1)
       << " c2=" << to_string(id.condition2) << " comm=" << to_string(id.commute);
    return {rot_ok && id_ok, os.str()};
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    const std::size_t n = a.dim();
    const std::size_t m = b.dim();
    ComplexMatrix out(n * m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < m; ++k) {
                for (std::size_t l = 0; l < m; ++l) {
                    out(i * m + k, j * m + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

Result constraint_theorem() {
    const auto n = make_exchange_constraint(2, true);
    Rng rng(7000);
    const auto a = random_hermitian(2, rng);
    const auto i2 = ComplexMatrix::identity(2);
    const std::vector<ComplexMatrix> measurable{
        ComplexMatrix::diagonal({2, 0, 0, -2}),
        ComplexMatrix::diagonal({1, -1, -1, 1}),
        swap_operator(2),
        kron(a, i2) + kron(i2, a),
        kron(a, a),
    };
    double worst = 0;
    for (const auto &m : measurable) {
        const auto r = spectral_decompose(m);
        if (!measurable_under(r, n).measurable) {
            return {false, "a demo observable is not measurable"};
        }
        for (std::uint64_t i = 0; i < 100; ++i) {
            const auto z = random_constrained_state(n, 4, derive_seed(7001, i));
            for (const auto &row : preserves_constraint(r, n, z)) {
                worst = std::max(worst, row.residual);
            }
        }
    }
    const auto single = spectral_decompose(ComplexMatrix::diagonal({1, 1, -1, -1}));
    double witness = 0;
    for (std::uint64_t i = 0; i < 100 && witness <= 1e-3; ++i) {
        const auto z = random_constrained_state(n, 4, derive_seed(7002, i));
        for (const auto &row : preserves_constraint(single, n, z)) {
            witness = std::max(witness, row.residual);
        }
    }
    std::ostringstream os;
    os << measurable.size() << " measurable observables x 100 states, worst residual "
       << worst << "; single-particle witness residual " << witness;
    return {worst <= 1e-9 && witness > 1e-3, os.str()};
}

Result theta_theorems() {
    std::size_t total = 0;
    std::size_t mismatches = 0;
    std::size_t commuting_mismatch = 0;
    std::size_t noncommuting_mismatch = 0;
    std::size_t degenerate_commuting = 0;
    std::size_t degenerate_commuting_mismatch = 0;
    const SampleConfig sc{kDefaultTol, 100, 7};
    for (std::size_t dim = 2; dim <= 8; ++dim) {
        std::uint64_t draw = 0;
        for (const auto &p : testing::curated_pairs(dim, 32, 11)) {
            const auto comm = classify_residual(
                commutator(reconstruct(p.r), reconstruct(p.s)).max_abs(), kDefaultTol);
            const auto fr = make_theta_family(
                p.r, testing::random_theta_basis(p.r, derive_seed(8000 + dim, draw)));
            const auto fs = make_theta_family(
                p.s, testing::random_theta_basis(p.s, derive_seed(9000 + dim, draw)));
            ++draw;
            std::size_t here = 0;
            for (const auto mode : {CheckMode::Exact, CheckMode::Sampled}) {
                here += theta_condition1(fr, fs, mode, sc).verdict != comm;
                here += theta_condition2(fr, fs, mode, sc).verdict != comm;
            }
            mismatches += here;
            const bool c = comm == Verdict::Holds;
            commuting_mismatch += c && here > 0;
            noncommuting_mismatch += !c && here > 0;
            degenerate_commuting += c && p.degenerate;
            degenerate_commuting_mismatch += c && p.degenerate && here > 0;
            ++total;
        }
    }
    // Eigenstate non-invariance of the rotated family on diag(2,2,5).
    const auto obs = spectral_decompose(ComplexMatrix::diagonal({2, 2, 5}));
    const BasisChoice rotated{{Vector{kInvSqrt2, kInvSqrt2, 0}, Vector{kInvSqrt2, -kInvSqrt2, 0}},
                              {Vector{0, 0, 1}}};
    const auto fam = make_theta_family(obs, rotated);
    const auto sel = theta_select(fam, 0, from_pure(Vector{1, 0, 0}));
    const double witness_gap =
        max_abs_diff(sel.matrix(), from_pure(Vector{kInvSqrt2, kInvSqrt2, 0}).matrix());
    std::ostringstream os;
    os << total << " pairs, " << 4 * total << " verdicts, " << mismatches
       << " mismatches; commuting pairs with a mismatch " << commuting_mismatch
       << " (degenerate commuting pairs " << degenerate_commuting << ", of which "
       << degenerate_commuting_mismatch << " mismatch); non-commuting pairs with a mismatch "
       << noncommuting_mismatch << "; non-invariance witness gap "
       << witness_gap;
    return {mismatches == 0 && witness_gap <= 1e-12, os.str()};
}

struct Run {
    int status;
    std::string out;
};

Run run(const std::string &args) {
    const std::string cmd = std::string(QMEASURE_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r{-1, {}};
    FILE *pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        return r;
    }
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.out.append(buf.data(), got);
    }
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

Result cli_determinism() {
    const std::string data = QMEASURE_TEST_DATA;
    const auto demo1 = run("demo");
    const auto demo2 = run("demo");
    const std::string compat = "--format machine --seed 3 compat --r " + data +
                               "/sigma_z.txt --s " + data + "/sigma_x.txt";
    const auto c1 = run(compat);
    const auto c2 = run(compat);
    const auto malformed = run("decompose " + data + "/malformed.txt");
    const auto negative =
        run("born --observable " + data + "/sigma_z.txt --state " + data + "/negative.txt");
    const auto bad_index = run("measure --observable " + data + "/diag225.txt --state " +
                               data + "/uniform3.txt --select --outcome 5");
    std::ostringstream os;
    os << "demo exit " << demo1.status << ", repeat identical "
       << (demo1.out == demo2.out && c1.out == c2.out ? "yes" : "no") << "; exits malformed "
       << malformed.status << ", non-positive " << negative.status << ", bad outcome "
       << bad_index.status;
    const bool pass = demo1.status == 0 && demo2.status == 0 && !demo1.out.empty() &&
                      demo1.out == demo2.out && c1.status == 0 && c1.out == c2.out &&
                      malformed.status == 2 && negative.status == 3 && bad_index.status == 4;
    return {pass, os.str()};
}

struct Criterion {
    const char *name;
    Result (*body)();
};

const Criterion kCriteria[] = {
    {"channel correctness suite", channel_suite},
    {"simple-spectrum special case", special_case},
    {"degeneracy divergence", degeneracy_divergence},
    {"compatibility equals commutativity", equivalence},
    {"lemma inequality", lemma},
    {"Heisenberg-picture compatibility", heisenberg},
    {"constraint preservation", constraint_theorem},
    {"generalized-channel compatibility", theta_theorems},
    {"CLI determinism and exit codes", cli_determinism},
};

} // namespace

int main(int argc, char **argv) {
    std::size_t only = 0;
    if (argc > 1) {
        only = static_cast<std::size_t>(std::strtoul(argv[1], nullptr, 10));
    }
    bool all = true;
    for (std::size_t i = 0; i < std::size(kCriteria); ++i) {
        if (only != 0 && only != i + 1) {
            continue;
        }
        Result o{false, {}};
        try {
            o = kCriteria[i].body();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": "
                  << kCriteria[i].name << " [" << o.detail << "]\n";
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
