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

#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "qmeasure/error.hpp"
#include "qmeasure/linalg.hpp"
#include "qmeasure/random.hpp"

namespace qmeasure::cli {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

class Demo {
  public:
    Demo(const RunConfig &config, std::ostream &out) : config_(config), out_(out) {}

    void item(const std::string &name, const std::function<bool()> &body) {
        bool ok = false;
        std::string note;
        try {
            ok = body();
        } catch (const Error &e) {
            note = e.what();
        } catch (const std::exception &e) {
            note = e.what();
        }
        record(name, ok, note);
    }

    /// Passes iff body throws an Error with the given code.
    void expect_error(const std::string &name, ErrorCode code,
                      const std::function<void()> &body) {
        std::string note;
        bool ok = false;
        try {
            body();
            note = "no error raised";
        } catch (const Error &e) {
            ok = e.code() == code;
            if (!ok) {
                note = e.what();
            }
        }
        record(name, ok, note);
    }

    /// Runs a group of items; a failure while building its shared inputs
    /// counts as one failed item.
    void group(const std::string &name, void (*items)(Demo &)) {
        try {
            items(*this);
        } catch (const std::exception &e) {
            record(name + ": setup", false, e.what());
        }
    }

    [[nodiscard]] bool near(double a, double b) const {
        return std::abs(a - b) <= config_.tol;
    }
    [[nodiscard]] bool near(const ComplexMatrix &a, const ComplexMatrix &b) const {
        return a.dim() == b.dim() && max_abs_diff(a, b) <= config_.tol;
    }

    [[nodiscard]] Observable diag_obs(std::initializer_list<double> d) const {
        return spectral_decompose(ComplexMatrix::diagonal(d), config_.cluster_tol,
                                  config_.tol);
    }
    [[nodiscard]] Observable obs(const ComplexMatrix &m) const {
        return spectral_decompose(m, config_.cluster_tol, config_.tol);
    }

    [[nodiscard]] const RunConfig &config() const { return config_; }
    [[nodiscard]] SampleConfig sample_config() const {
        return {config_.tol, config_.samples, config_.seed};
    }
    [[nodiscard]] std::size_t failures() const { return failures_; }

    void summary() {
        out_ << "# " << (passed_ + failures_) << " items, " << failures_ << " failed\n";
    }

  private:
    void record(const std::string &name, bool ok, const std::string &note) {
        out_ << (ok ? "PASS " : "FAIL ") << name;
        if (!note.empty()) {
            out_ << " (" << note << ')';
        }
        out_ << '\n';
        (ok ? passed_ : failures_) += 1;
    }

    RunConfig config_;
    std::ostream &out_;
    std::size_t passed_ = 0;
    std::size_t failures_ = 0;
};

ComplexMatrix sigma_x() { return {{0, 1}, {1, 0}}; }
ComplexMatrix sigma_z() { return ComplexMatrix::diagonal({1, -1}); }
ComplexMatrix hadamard() {
    return {{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}};
}
ComplexMatrix plus_projector() { return {{0.5, 0.5}, {0.5, 0.5}}; }
Vector basis_vector(std::size_t dim, std::size_t i) {
    Vector v(dim);
    v[i] = 1.0;
    return v;
}
Vector scaled(Complex c, Vector v) {
    for (auto &x : v) {
        x *= c;
    }
    return v;
}
Vector uniform3() { return {kInvSqrt3, kInvSqrt3, kInvSqrt3}; }

bool contains(const std::string &haystack, const std::string &needle) {
    return haystack.find(needle) != std::string::npos;
}

void linalg_items(Demo &d) {
    const double tol = d.config().tol;
    d.item("eig: identity dim 2 gives [1, 1] and the standard basis", [&] {
        const auto es = eig_hermitian(ComplexMatrix::identity(2), tol, d.config().cluster_tol);
        return d.near(es.values[0], 1) && d.near(es.values[1], 1) &&
               d.near(ComplexMatrix::outer(es.vectors[0], es.vectors[0]),
                      ComplexMatrix::diagonal({1, 0}));
    });
    d.item("eig: [[0,1],[1,0]] gives -1, +1 with (1,-1)/sqrt2, (1,1)/sqrt2", [&] {
        const auto es = eig_hermitian(sigma_x(), tol, d.config().cluster_tol);
        const Vector minus{kInvSqrt2, -kInvSqrt2};
        const Vector plus{kInvSqrt2, kInvSqrt2};
        return d.near(es.values[0], -1) && d.near(es.values[1], 1) &&
               std::abs(std::abs(inner(es.vectors[0], minus)) - 1) <= tol &&
               std::abs(std::abs(inner(es.vectors[1], plus)) - 1) <= tol;
    });
    d.item("eig: diag(5,2,2) gives [2, 2, 5]", [&] {
        const auto es = eig_hermitian(ComplexMatrix::diagonal({5, 2, 2}), tol,
                                      d.config().cluster_tol);
        return d.near(es.values[0], 2) && d.near(es.values[1], 2) && d.near(es.values[2], 5);
    });
    d.item("cluster: [1, 2, 3] stays split", [&] {
        const std::vector<double> v{1, 2, 3};
        return cluster_eigenvalues(v, 1e-9) ==
               std::vector<std::vector<std::size_t>>{{0}, {1}, {2}};
    });
    d.item("cluster: [1, 1+1e-12, 3] merges the first two", [&] {
        const std::vector<double> v{1.0, 1.0 + 1e-12, 3.0};
        return cluster_eigenvalues(v, 1e-9) ==
               std::vector<std::vector<std::size_t>>{{0, 1}, {2}};
    });
    d.item("cluster: singleton [7]", [&] {
        const std::vector<double> v{7};
        return cluster_eigenvalues(v, 1e-9) == std::vector<std::vector<std::size_t>>{{0}};
    });
    d.item("projector: e1 in dim 2 is diag(1,0)", [&] {
        const std::vector<Vector> b{basis_vector(2, 0)};
        return d.near(projector_from_basis(b, tol), ComplexMatrix::diagonal({1, 0}));
    });
    d.item("projector: {e1, e2} in dim 3 is diag(1,1,0)", [&] {
        const std::vector<Vector> b{basis_vector(3, 0), basis_vector(3, 1)};
        return d.near(projector_from_basis(b, tol), ComplexMatrix::diagonal({1, 1, 0}));
    });
    d.item("projector: (1,1)/sqrt2 gives half of the all-ones matrix", [&] {
        const std::vector<Vector> b{{kInvSqrt2, kInvSqrt2}};
        return d.near(projector_from_basis(b, tol), plus_projector());
    });
    d.expect_error("projector: non-orthonormal input is rejected", ErrorCode::NotOrthonormal,
                   [&] {
                       const std::vector<Vector> b{{1, 0}, {1, 1}};
                       (void)projector_from_basis(b, tol);
                   });
    d.item("commutes: diag(1,2) and diag(3,4), residual 0", [&] {
        const auto c = commutes(ComplexMatrix::diagonal({1, 2}),
                                ComplexMatrix::diagonal({3, 4}), tol);
        return c.commutes && c.residual == 0.0;
    });
    d.item("commutes: sigma_x and sigma_z do not, residual 2", [&] {
        const auto c = commutes(sigma_x(), sigma_z(), tol);
        return !c.commutes && d.near(c.residual, 2);
    });
    d.item("commutes: anything with the identity", [&] {
        Rng rng(d.config().seed);
        return commutes(ginibre(4, rng), ComplexMatrix::identity(4), tol).commutes;
    });
}

void state_items(Demo &d) {
    const double tol = d.config().tol;
    d.item("from_pure: e1 is diag(1,0)", [&] {
        return d.near(from_pure(basis_vector(2, 0)).matrix(), ComplexMatrix::diagonal({1, 0}));
    });
    d.item("from_pure: (1,1)/sqrt2 is half of the all-ones matrix", [&] {
        const Vector v{kInvSqrt2, kInvSqrt2};
        return d.near(from_pure(v).matrix(), plus_projector());
    });
    d.item("from_pure: (2,0) normalizes to diag(1,0)", [&] {
        const Vector v{2, 0};
        return d.near(from_pure(v).matrix(), ComplexMatrix::diagonal({1, 0}));
    });
    d.expect_error("from_pure: zero vector", ErrorCode::ZeroVector, [] {
        const Vector v{0, 0};
        (void)from_pure(v);
    });
    d.item("mix: single part returns it", [&] {
        const auto z = from_pure(Vector{0.6, 0.8});
        const std::vector<WeightedState> parts{{1.0, z}};
        return d.near(mix(parts, tol).matrix(), z.matrix());
    });
    d.item("mix: fair coin of e1, e2 is diag(0.5,0.5)", [&] {
        const std::vector<WeightedState> parts{
            {0.5, from_pure(basis_vector(2, 0))}, {0.5, from_pure(basis_vector(2, 1))}};
        return d.near(mix(parts, tol).matrix(), ComplexMatrix::diagonal({0.5, 0.5}));
    });
    d.item("mix: 1/4 |+><+| + 3/4 diag(1,0)", [&] {
        const std::vector<WeightedState> parts{
            {0.25, from_pure(Vector{kInvSqrt2, kInvSqrt2})},
            {0.75, from_pure(basis_vector(2, 0))}};
        const ComplexMatrix want{{0.875, 0.125}, {0.125, 0.125}};
        return d.near(mix(parts, tol).matrix(), want);
    });
    d.item("random_density: dim 1 is [[1]]", [&] {
        return d.near(random_density(1, 1, d.config().seed).matrix(),
                      ComplexMatrix::identity(1));
    });
    d.item("random_density: dim 4 rank 1 is pure", [&] {
        return d.near(random_density(4, 1, d.config().seed + 7).purity(), 1);
    });
    d.item("random_density: dim 4 rank 4 has unit trace and full rank", [&] {
        const auto z = random_density(4, 4, d.config().seed + 7);
        const auto es = eig_hermitian(z.matrix(), tol, d.config().cluster_tol);
        return d.near(z.matrix().trace().real(), 1) && es.values.front() > tol;
    });
    d.item("validate: diag(0.5,0.5) is a state", [&] {
        (void)validate(ComplexMatrix::diagonal({0.5, 0.5}), tol);
        return true;
    });
    d.expect_error("validate: diag(1.5,-0.5) is not positive", ErrorCode::NotPositive,
                   [&] { (void)validate(ComplexMatrix::diagonal({1.5, -0.5}), tol); });
    d.expect_error("validate: diag(0.6,0.6) is not normalized", ErrorCode::NotNormalized,
                   [&] { (void)validate(ComplexMatrix::diagonal({0.6, 0.6}), tol); });
}

void observable_items(Demo &d) {
    d.item("decompose: identity dim 3 is one outcome of multiplicity 3", [&] {
        const auto o = d.obs(ComplexMatrix::identity(3));
        return o.size() == 1 && o.pair(0).multiplicity == 3 && d.near(o.eigenvalue(0), 1);
    });
    d.item("decompose: diag(1,-1) gives (-1, diag(0,1)), (+1, diag(1,0))", [&] {
        const auto o = d.diag_obs({1, -1});
        return o.size() == 2 && d.near(o.eigenvalue(0), -1) && d.near(o.eigenvalue(1), 1) &&
               d.near(o.projector(0), ComplexMatrix::diagonal({0, 1})) &&
               d.near(o.projector(1), ComplexMatrix::diagonal({1, 0}));
    });
    d.item("decompose: diag(2,2,5) groups the repeated eigenvalue", [&] {
        const auto o = d.diag_obs({2, 2, 5});
        return o.size() == 2 && o.pair(0).multiplicity == 2 && o.pair(1).multiplicity == 1 &&
               d.near(o.projector(0), ComplexMatrix::diagonal({1, 1, 0})) &&
               d.near(o.projector(1), ComplexMatrix::diagonal({0, 0, 1}));
    });
    d.item("reconstruct: (1, I) is the identity", [&] {
        const auto o = Observable::from_spectral({{1.0, ComplexMatrix::identity(2)}},
                                                 d.config().tol);
        return d.near(reconstruct(o), ComplexMatrix::identity(2));
    });
    d.item("reconstruct: round trip of [[0,1],[1,0]]", [&] {
        return d.near(reconstruct(d.obs(sigma_x())), sigma_x());
    });
    d.item("reconstruct: (2, diag(1,1,0)), (5, diag(0,0,1)) is diag(2,2,5)", [&] {
        const auto o = Observable::from_spectral(
            {{2.0, ComplexMatrix::diagonal({1, 1, 0})}, {5.0, ComplexMatrix::diagonal({0, 0, 1})}},
            d.config().tol);
        return d.near(reconstruct(o), ComplexMatrix::diagonal({2, 2, 5}));
    });
    d.item("refinement: diag(1,2,3) refines diag(1,1,3)", [&] {
        return is_function_refinement(d.diag_obs({1, 2, 3}), d.diag_obs({1, 1, 3}),
                                      d.config().tol);
    });
    d.item("refinement: diag(1,1,3) does not refine diag(1,2,3)", [&] {
        return !is_function_refinement(d.diag_obs({1, 1, 3}), d.diag_obs({1, 2, 3}),
                                       d.config().tol);
    });
    d.item("refinement: everything refines the identity observable", [&] {
        return is_function_refinement(d.obs(sigma_x()), d.obs(ComplexMatrix::identity(2)),
                                      d.config().tol);
    });
}

void channel_items(Demo &d) {
    const double tol = d.config().tol;
    const auto plus = from_pure(Vector{kInvSqrt2, kInvSqrt2});
    const auto triple = from_pure(uniform3());
    const auto z_obs = d.diag_obs({1, -1});
    const auto deg = d.diag_obs({2, 2, 5});

    d.item("born: identity observable gives one certain outcome", [&] {
        const auto dist = born(d.obs(ComplexMatrix::identity(2)), plus, tol);
        return dist.outcomes.size() == 1 && d.near(dist.outcomes[0].probability, 1);
    });
    d.item("born: diag(1,-1) on |+> is (1/2, 1/2)", [&] {
        const auto dist = born(z_obs, plus, tol);
        return d.near(dist.outcomes[0].probability, 0.5) &&
               d.near(dist.outcomes[1].probability, 0.5);
    });
    d.item("born: diag(2,2,5) on (1,1,1)/sqrt3 is (2/3, 1/3)", [&] {
        const auto dist = born(deg, triple, tol);
        return d.near(dist.outcomes[0].probability, 2.0 / 3) &&
               d.near(dist.outcomes[1].probability, 1.0 / 3);
    });
    d.item("select: identity observable leaves Z unchanged", [&] {
        return d.near(lueders_select(d.obs(ComplexMatrix::identity(2)), 0, plus).matrix(),
                      plus.matrix());
    });
    d.item("select: degenerate outcome keeps the 2x2 block, trace 2/3, still pure", [&] {
        const auto sel = lueders_select(deg, 0, triple);
        const ComplexMatrix want{{1.0 / 3, 1.0 / 3, 0}, {1.0 / 3, 1.0 / 3, 0}, {0, 0, 0}};
        const auto normed = normalize(sel);
        return d.near(sel.matrix(), want) && d.near(sel.weight(), 2.0 / 3) &&
               d.near(normed.matrix(), from_pure(Vector{kInvSqrt2, kInvSqrt2, 0}).matrix()) &&
               d.near(normed.purity(), 1);
    });
    d.item("select: simple eigenvalue +1 on |+> is diag(1,0)/2", [&] {
        const auto sel = lueders_select(z_obs, 1, plus);
        const auto &psi = z_obs.pair(1).basis[0];
        const auto formula =
            trace_of_product(ComplexMatrix::outer(psi, psi), plus.matrix()) *
            ComplexMatrix::outer(psi, psi);
        return d.near(sel.matrix(), ComplexMatrix::diagonal({0.5, 0})) &&
               d.near(sel.matrix(), formula);
    });
    d.expect_error("select: normalizing an impossible outcome", ErrorCode::ImpossibleOutcome,
                   [&] {
                       (void)normalize(lueders_select(z_obs, 0, from_pure(basis_vector(2, 0))));
                   });
    d.item("aggregate: identity observable leaves Z unchanged", [&] {
        return d.near(lueders_aggregate(d.obs(ComplexMatrix::identity(2)), plus).matrix(),
                      plus.matrix());
    });
    d.item("aggregate: diag(1,-1) dephases |+> to diag(0.5,0.5)", [&] {
        return d.near(lueders_aggregate(z_obs, plus).matrix(),
                      ComplexMatrix::diagonal({0.5, 0.5}));
    });
    d.item("aggregate: diag(2,2,5) on (1,1,1)/sqrt3 keeps the block coherence", [&] {
        const ComplexMatrix want{
            {1.0 / 3, 1.0 / 3, 0}, {1.0 / 3, 1.0 / 3, 0}, {0, 0, 1.0 / 3}};
        return d.near(lueders_aggregate(deg, triple).matrix(), want);
    });
    d.item("von Neumann: agrees with Lueders for a simple spectrum", [&] {
        Rng rng(derive_seed(d.config().seed, 11));
        const auto o = d.obs(random_hermitian(4, rng));
        const auto z = random_density(4, 4, derive_seed(d.config().seed, 12));
        return d.near(von_neumann_aggregate(o, z, std::nullopt, tol).matrix(),
                      lueders_aggregate(o, z).matrix());
    });
    d.item("von Neumann: diag(2,2,5) on (1,1,1)/sqrt3 is diag(1/3,1/3,1/3)", [&] {
        const BasisChoice standard{{basis_vector(3, 0), basis_vector(3, 1)},
                                   {basis_vector(3, 2)}};
        const auto vn = von_neumann_aggregate(deg, triple, standard, tol);
        const auto lu = lueders_aggregate(deg, triple);
        return d.near(vn.matrix(), ComplexMatrix::diagonal({1.0 / 3, 1.0 / 3, 1.0 / 3})) &&
               d.near(vn.purity(), 1.0 / 3) && d.near(lu.purity(), 5.0 / 9);
    });
    d.item("von Neumann: identity observable disturbs |+>", [&] {
        const BasisChoice standard{{basis_vector(2, 0), basis_vector(2, 1)}};
        const auto vn =
            von_neumann_aggregate(d.obs(ComplexMatrix::identity(2)), plus, standard, tol);
        return d.near(vn.matrix(), ComplexMatrix::diagonal({0.5, 0.5})) &&
               !d.near(vn.matrix(), plus.matrix());
    });
    d.expect_error("von Neumann: basis vector outside its eigenspace", ErrorCode::BadBasis, [&] {
        const BasisChoice bad{{basis_vector(3, 0), basis_vector(3, 2)}, {basis_vector(3, 1)}};
        (void)von_neumann_aggregate(deg, triple, bad, tol);
    });

    const BasisChoice rotated{{Vector{kInvSqrt2, kInvSqrt2, 0}, Vector{kInvSqrt2, -kInvSqrt2, 0}},
                              {basis_vector(3, 2)}};
    d.item("theta: eigenbasis targets reduce to the projectors", [&] {
        const BasisChoice own{deg.pair(0).basis, deg.pair(1).basis};
        const auto fam = make_theta_family(deg, own, tol);
        return d.near(fam.op(0), deg.projector(0)) && d.near(fam.op(1), deg.projector(1));
    });
    d.item("theta: rotated block satisfies Theta*Theta = diag(1,1,0)", [&] {
        const auto fam = make_theta_family(deg, rotated, tol);
        const auto r = theta_family_residuals(fam);
        return d.near(fam.op(0).adjoint() * fam.op(0), ComplexMatrix::diagonal({1, 1, 0})) &&
               r.adjoint_products <= tol && r.projector_action <= tol;
    });
    d.expect_error("theta: target leaving the eigenspace", ErrorCode::SubspaceViolation, [&] {
        const BasisChoice bad{{Vector{kInvSqrt2, 0, kInvSqrt2}, basis_vector(3, 1)},
                              {Vector{kInvSqrt2, 0, -kInvSqrt2}}};
        (void)make_theta_family(deg, bad, tol);
    });
    d.item("theta: Lueders reduction matches select and aggregate", [&] {
        const auto fam = lueders_family(deg);
        return d.near(theta_select(fam, 0, triple).matrix(),
                      lueders_select(deg, 0, triple).matrix()) &&
               d.near(theta_aggregate(fam, triple).matrix(),
                      lueders_aggregate(deg, triple).matrix());
    });
    d.item("theta: rotated family repeats the eigenvalue but moves e1", [&] {
        const auto fam = make_theta_family(deg, rotated, tol);
        const auto e1 = from_pure(basis_vector(3, 0));
        const auto sel = theta_select(fam, 0, e1);
        const auto moved = from_pure(Vector{kInvSqrt2, kInvSqrt2, 0});
        return d.near(sel.weight(), 1) && d.near(sel.matrix(), moved.matrix()) &&
               !d.near(sel.matrix(), e1.matrix());
    });
    d.item("theta: measuring again after a theta selection is certain", [&] {
        const auto fam = make_theta_family(deg, rotated, tol);
        const auto after = normalize(theta_select(fam, 0, triple));
        return d.near(born(deg, after, tol).outcomes[0].probability, 1);
    });
    d.item("select: eigenstates are left in place by the Lueders rule", [&] {
        const Vector psi{kInvSqrt2, -kInvSqrt2, 0};
        const auto z = from_pure(psi);
        return d.near(lueders_select(deg, 0, z).matrix(), z.matrix());
    });
}

void compatibility_items(Demo &d) {
    const double tol = d.config().tol;
    const auto sc = d.sample_config();
    const auto r = d.diag_obs({1, -1});
    const auto x = d.obs(sigma_x());
    const auto e1 = from_pure(basis_vector(2, 0));
    const auto plus = from_pure(Vector{kInvSqrt2, kInvSqrt2});
    const auto r4 = d.diag_obs({1, 1, -1, -1});
    const ComplexMatrix ix{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
    const auto s4 = d.obs(ix);

    d.item("sequential: S = R, j = k is a single Lueders selection", [&] {
        const auto z = random_density(3, 3, derive_seed(d.config().seed, 21));
        const auto o = d.diag_obs({2, 2, 5});
        return d.near(sequential_select(o, 0, o, 0, z).matrix(),
                      lueders_select(o, 0, z).matrix());
    });
    d.item("sequential: z then x on e1 keeps weight 1/2, repeated z gives 1/4", [&] {
        const auto sel = sequential_select(r, 1, x, 1, e1);
        const double again = trace_of_product(r.projector(1), sel.matrix()).real();
        return d.near(sel.weight(), 0.5) && d.near(again, 0.25);
    });
    d.item("sequential: commuting pair weight is order independent", [&] {
        const auto z = random_density(4, 4, derive_seed(d.config().seed, 22));
        for (std::size_t k = 0; k < r4.size(); ++k) {
            for (std::size_t j = 0; j < s4.size(); ++j) {
                if (!d.near(sequential_select(r4, k, s4, j, z).weight(),
                            sequential_select(s4, j, r4, k, z).weight())) {
                    return false;
                }
            }
        }
        return true;
    });
    for (const auto mode : {CheckMode::Exact, CheckMode::Sampled}) {
        const std::string tag = mode == CheckMode::Exact ? "exact" : "sampled";
        d.item("condition 1 (" + tag + "): S = R holds", [&] {
            const auto o = d.diag_obs({2, 2, 5});
            return condition1_holds(o, o, mode, sc).holds();
        });
        d.item("condition 1 (" + tag + "): z versus x fails", [&] {
            return condition1_holds(r, x, mode, sc).verdict == Verdict::Fails;
        });
        d.item("condition 1 (" + tag + "): diag(1,1,-1,-1) with I(x)sigma_x holds", [&] {
            return condition1_holds(r4, s4, mode, sc).holds();
        });
        d.item("condition 2 (" + tag + "): S = R holds", [&] {
            return condition2_holds(x, x, mode, sc).holds();
        });
        d.item("condition 2 (" + tag + "): z versus x fails", [&] {
            return condition2_holds(r, x, mode, sc).verdict == Verdict::Fails;
        });
        d.item("condition 2 (" + tag + "): diag(1,1,-1,-1) with I(x)sigma_x holds", [&] {
            return condition2_holds(r4, s4, mode, sc).holds();
        });
    }
    d.item("condition 1: witness e1 leaves the next z outcome at (1/2, 1/2)", [&] {
        const auto after = normalize(sequential_select(r, 1, x, 1, e1));
        const auto dist = born(r, after, tol);
        return d.near(dist.outcomes[0].probability, 0.5) &&
               d.near(dist.outcomes[1].probability, 0.5);
    });
    d.item("condition 2: |+> gives 1/2 after dephasing against 1 before", [&] {
        const double lhs =
            trace_of_product(x.projector(1), lueders_aggregate(r, plus).matrix()).real();
        const double rhs = trace_of_product(x.projector(1), plus.matrix()).real();
        return d.near(lhs, 0.5) && d.near(rhs, 1);
    });
    d.item("projector chain identities vanish for a commuting pair", [&] {
        const auto c = projector_chain_residuals(r4, s4);
        return c.cross <= tol && c.left_absorption <= tol && c.right_absorption <= tol &&
               c.projector_commute <= tol;
    });
    d.item("lemma: B = I", [&] {
        Rng rng(derive_seed(d.config().seed, 23));
        return lemma_check(ComplexMatrix::identity(3), ginibre(3, rng), tol).holds;
    });
    d.item("lemma: C maps into ker B", [&] {
        const ComplexMatrix c{{0, 0}, {1, 1}};
        const auto res = lemma_check(ComplexMatrix::diagonal({1, 0}), c, tol);
        return res.holds && res.bc_norm == 0.0 && res.cbc_norm == 0.0;
    });
    d.item("lemma: 500 random pairs in dims 2..6", [&] {
        for (std::uint64_t i = 0; i < 500; ++i) {
            Rng rng(derive_seed(d.config().seed, 1000 + i));
            const std::size_t n = 2 + i % 5;
            const auto g = ginibre(n, rng);
            const auto b = g * g.adjoint();
            if (!lemma_check(b, ginibre(n, rng), tol).holds) {
                return false;
            }
        }
        return true;
    });
    d.expect_error("lemma: indefinite B", ErrorCode::NotPositive, [&] {
        (void)lemma_check(sigma_z(), ComplexMatrix::identity(2), tol);
    });
    d.item("heisenberg: U = I leaves R unchanged", [&] {
        const auto h = heisenberg_observable(r, ComplexMatrix::identity(2), tol);
        return d.near(h.projector(0), r.projector(0)) && d.near(h.projector(1), r.projector(1));
    });
    d.item("heisenberg: Hadamard turns the z projectors into |+-><+-|", [&] {
        const auto h = heisenberg_observable(r, hadamard(), tol);
        return d.near(h.projector(1), plus_projector()) &&
               d.near(h.projector(0), ComplexMatrix{{0.5, -0.5}, {-0.5, 0.5}});
    });
    d.item("heisenberg: eigenvalues are preserved", [&] {
        Rng rng(derive_seed(d.config().seed, 24));
        const auto o = d.diag_obs({-1.5, 0.25, 0.25, 3});
        const auto h = heisenberg_observable(o, random_unitary(4, rng), tol);
        return h.eigenvalues() == o.eigenvalues();
    });
    const CompatConfig cc{tol, ModeSelection::Both, d.config().samples, d.config().seed};
    d.item("report: commuting pair is compatible three ways", [&] {
        const auto rep = compat_report(r4, s4, std::nullopt, std::nullopt, cc);
        return rep.condition1 == Verdict::Holds && rep.condition2 == Verdict::Holds &&
               rep.commute == Verdict::Holds;
    });
    d.item("report: z/x pair is incompatible three ways, commutator 2", [&] {
        const auto rep = compat_report(r, x, std::nullopt, std::nullopt, cc);
        return rep.condition1 == Verdict::Fails && rep.condition2 == Verdict::Fails &&
               rep.commute == Verdict::Fails && d.near(rep.commutator_residual, 2);
    });
    d.item("report: S = R evolved by a Hadamard is incompatible", [&] {
        const auto rep = compat_report(r, r, std::nullopt, hadamard(), cc);
        return rep.condition1 == Verdict::Fails && rep.condition2 == Verdict::Fails &&
               rep.commute == Verdict::Fails;
    });
    d.item("report: S = R evolved by the identity is compatible", [&] {
        const auto rep = compat_report(r, r, std::nullopt, ComplexMatrix::identity(2), cc);
        return rep.condition1 == Verdict::Holds && rep.condition2 == Verdict::Holds &&
               rep.commute == Verdict::Holds;
    });
    d.item("theta conditions: Lueders families match the plain conditions", [&] {
        const auto fr = lueders_family(r);
        const auto fx = lueders_family(x);
        for (const auto mode : {CheckMode::Exact, CheckMode::Sampled}) {
            if (theta_condition1(fr, fx, mode, sc).verdict !=
                    condition1_holds(r, x, mode, sc).verdict ||
                theta_condition2(fr, fx, mode, sc).verdict !=
                    condition2_holds(r, x, mode, sc).verdict ||
                theta_condition1(fr, fr, mode, sc).verdict !=
                    condition1_holds(r, r, mode, sc).verdict) {
                return false;
            }
        }
        return true;
    });
    d.item("theta conditions: S a function of R, both rotated, both hold", [&] {
        const auto rr = d.diag_obs({2, 2, 5});
        const auto ss = d.diag_obs({1, 1, 3});
        const BasisChoice rot_r{
            {Vector{kInvSqrt2, kInvSqrt2, 0}, Vector{kInvSqrt2, -kInvSqrt2, 0}},
            {basis_vector(3, 2)}};
        const BasisChoice rot_s{{Vector{0.6, Complex(0, 0.8), 0}, Vector{0.8, Complex(0, -0.6), 0}},
                                {Vector{0, 0, Complex(0, 1)}}};
        const auto fr = make_theta_family(rr, rot_r, tol);
        const auto fs = make_theta_family(ss, rot_s, tol);
        const auto e1 = from_pure(basis_vector(3, 0));
        const bool moved = !d.near(theta_select(fr, 0, e1).matrix(), e1.matrix());
        return moved && theta_condition1(fr, fs, CheckMode::Exact, sc).holds() &&
               theta_condition2(fr, fs, CheckMode::Exact, sc).holds() &&
               theta_condition1(fr, fs, CheckMode::Sampled, sc).holds() &&
               theta_condition2(fr, fs, CheckMode::Sampled, sc).holds();
    });
    d.item("theta conditions: z/x with phased targets both fail", [&] {
        const Complex ph = std::polar(1.0, 0.7);
        const auto fr = make_theta_family(
            r, BasisChoice{{scaled(ph, r.pair(0).basis[0])}, {r.pair(1).basis[0]}}, tol);
        const auto fx = make_theta_family(
            x, BasisChoice{{x.pair(0).basis[0]}, {scaled(ph, x.pair(1).basis[0])}}, tol);
        return theta_condition1(fr, fx, CheckMode::Exact, sc).verdict == Verdict::Fails &&
               theta_condition2(fr, fx, CheckMode::Exact, sc).verdict == Verdict::Fails &&
               theta_condition1(fr, fx, CheckMode::Sampled, sc).verdict == Verdict::Fails &&
               theta_condition2(fr, fx, CheckMode::Sampled, sc).verdict == Verdict::Fails;
    });
}

void constraint_items(Demo &d) {
    const double tol = d.config().tol;
    const auto n = make_exchange_constraint(2, true);
    const Constraint zero(ComplexMatrix(4), "zero");
    const auto sym = from_pure(Vector{0, kInvSqrt2, kInvSqrt2, 0});
    const auto prod = from_pure(basis_vector(4, 1));
    const auto total_z = d.diag_obs({2, 0, 0, -2});
    const auto single = d.diag_obs({1, 1, -1, -1});

    d.item("satisfies: zero constraint admits every state", [&] {
        return satisfies(random_density(4, 4, derive_seed(d.config().seed, 31)), zero, tol).ok;
    });
    d.item("satisfies: symmetric state passes the exchange constraint", [&] {
        return satisfies(sym, n, tol).ok;
    });
    d.item("satisfies: e1(x)e2 fails with residual 1/2", [&] {
        const auto res = satisfies(prod, n, tol);
        return !res.ok && d.near(res.residual, 0.5);
    });
    d.item("measurable: anything under the zero constraint", [&] {
        return measurable_under(single, zero, tol).measurable;
    });
    d.item("measurable: diag(2,0,0,-2) under exchange symmetry", [&] {
        return measurable_under(total_z, n, tol).measurable;
    });
    d.item("measurable: single-particle diag(1,1,-1,-1) is not", [&] {
        return !measurable_under(single, n, tol).measurable;
    });
    d.item("preserves: measurable observable keeps every branch symmetric", [&] {
        for (std::uint64_t i = 0; i < 20; ++i) {
            const auto z = random_constrained_state(n, 4, derive_seed(d.config().seed, 40 + i), tol);
            for (const auto &row : preserves_constraint(total_z, n, z, tol)) {
                if (!row.preserved) {
                    return false;
                }
            }
        }
        return true;
    });
    d.item("preserves: single-particle observable breaks a symmetric state", [&] {
        bool violated = false;
        for (const auto &row : preserves_constraint(single, n, sym, tol)) {
            violated = violated || (!row.preserved && row.residual > 1e-3);
        }
        return violated;
    });
    d.item("preserves: zero constraint is never broken", [&] {
        for (const auto &row : preserves_constraint(single, zero, sym, tol)) {
            if (!row.preserved) {
                return false;
            }
        }
        return true;
    });
    d.expect_error("preserves: input state already violating", ErrorCode::ConstraintViolatedOnInput,
                   [&] { (void)preserves_constraint(total_z, n, prod, tol); });
    d.item("exchange: symmetric constraint is the rank-1 singlet projector", [&] {
        const auto &op = n.op();
        const Vector singlet{0, kInvSqrt2, -kInvSqrt2, 0};
        return d.near(op, ComplexMatrix::outer(singlet, singlet)) &&
               d.near(op.trace().real(), 1);
    });
    d.item("exchange: antisymmetric constraint is the rank-3 triplet projector", [&] {
        const ComplexMatrix op = make_exchange_constraint(2, false).op();
        return d.near(op.trace().real(), 3) && d.near(op + n.op(), ComplexMatrix::identity(4));
    });
    d.item("exchange: both are Hermitian idempotents", [&] {
        for (const bool s : {true, false}) {
            const ComplexMatrix op = make_exchange_constraint(2, s).op();
            if (!d.near(op * op, op) || !d.near(op.adjoint(), op)) {
                return false;
            }
        }
        return true;
    });
    d.expect_error("exchange: local dimension 1", ErrorCode::BadDim,
                   [] { (void)make_exchange_constraint(1, true); });
    d.expect_error("constraint set: non-commuting members", ErrorCode::IncompatibleConstraints,
                   [] {
                       const ConstraintSet set({Constraint(sigma_x(), "x"),
                                                Constraint(sigma_z(), "z")});
                   });
}

void report_items(Demo &d) {
    RunConfig text = d.config();
    text.format = OutputFormat::Text;
    d.item("decompose report: diag(2,2,5) rows (2, mult 2), (5, mult 1)", [&] {
        std::ostringstream os;
        report_decompose(d.diag_obs({2, 2, 5}), text, os);
        return contains(os.str(), "\n0  2  2  2\n1  5  1  1\n");
    });
    d.item("decompose report: identity gives a single row", [&] {
        std::ostringstream os;
        report_decompose(d.obs(ComplexMatrix::identity(4)), text, os);
        return contains(os.str(), "\n0  1  4  4\n") && !contains(os.str(), "\n1  ");
    });
    d.item("measure report: Lueders aggregate on the degenerate triple", [&] {
        std::ostringstream os;
        report_measure(d.diag_obs({2, 2, 5}), from_pure(uniform3()), MeasureRequest{}, text, os);
        const auto s = os.str();
        return contains(s, "0  2  0.666666666667") && contains(s, "1  5  0.333333333333") &&
               contains(s, "dim 3\n");
    });
    d.item("compat report: z/x prints the all-false verdict", [&] {
        std::ostringstream os;
        report_compat(d.diag_obs({1, -1}), d.obs(sigma_x()), std::nullopt, std::nullopt,
                      ModeSelection::Both, text, os);
        return contains(os.str(), "verdict c1=false c2=false comm=false\n");
    });
    d.item("constraint report: symmetric observable preserves everything", [&] {
        const auto n = make_exchange_constraint(2, true);
        ConstraintRequest req;
        req.randomized = true;
        for (std::uint64_t i = 0; i < 5; ++i) {
            req.states.push_back(
                random_constrained_state(n, 4, derive_seed(d.config().seed, 60 + i), text.tol));
        }
        std::ostringstream os;
        report_constraint(d.diag_obs({2, 0, 0, -2}), n, req, text, os);
        return contains(os.str(), "all outcomes preserve the constraint: true\n");
    });
}

} // namespace

int run_demo(const RunConfig &config, std::ostream &out) {
    Demo d(config, out);
    out << "# qmeasure demo: tol " << config.tol << ", seed " << config.seed << '\n';
    d.group("linalg", linalg_items);
    d.group("states", state_items);
    d.group("observables", observable_items);
    d.group("channels", channel_items);
    d.group("compatibility", compatibility_items);
    d.group("constraints", constraint_items);
    d.group("reports", report_items);
    d.summary();
    return d.failures() == 0 ? kExitOk : kExitFailure;
}

} // namespace qmeasure::cli
