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
#include <string>

#include <CLI11.hpp>

#include "cli.hpp"
#include "qmeasure/error.hpp"
#include "qmeasure/matrix_io.hpp"
#include "qmeasure/random.hpp"

namespace qmeasure::cli {

namespace {

std::string num(double v) {
    if (v == 0.0) {
        v = 0.0; // drop the sign of -0
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string exact(double v) { return format_real(v); }

std::string_view yes_no(bool b) { return b ? "true" : "false"; }

bool machine(const RunConfig &config) {
    return config.format == OutputFormat::Machine;
}

std::string_view rule_name(Rule rule) {
    switch (rule) {
    case Rule::Lueders: return "lueders";
    case Rule::VonNeumann: return "vonneumann";
    case Rule::Theta: return "theta";
    }
    return "lueders";
}

void print_distribution(const OutcomeDistribution &dist, const RunConfig &config,
                        std::ostream &out) {
    if (machine(config)) {
        out << "outcomes=" << dist.outcomes.size() << '\n';
        for (std::size_t k = 0; k < dist.outcomes.size(); ++k) {
            out << "eigenvalue." << k << '=' << exact(dist.outcomes[k].eigenvalue) << '\n';
            out << "probability." << k << '=' << exact(dist.outcomes[k].probability)
                << '\n';
        }
        return;
    }
    out << "# outcome  eigenvalue  probability\n";
    for (std::size_t k = 0; k < dist.outcomes.size(); ++k) {
        out << k << "  " << num(dist.outcomes[k].eigenvalue) << "  "
            << num(dist.outcomes[k].probability) << '\n';
    }
}

std::string verdict_line(const CompatReport &report) {
    return "verdict c1=" + std::string(to_string(report.condition1)) +
           " c2=" + std::string(to_string(report.condition2)) +
           " comm=" + std::string(to_string(report.commute));
}

void print_condition(const char *key, const std::optional<ConditionResult> &res,
                     const RunConfig &config, std::ostream &out) {
    if (!res) {
        return;
    }
    if (machine(config)) {
        out << key << ".verdict=" << to_string(res->verdict) << '\n';
        out << key << ".residual=" << exact(res->residual) << '\n';
        return;
    }
    out << "  " << key << ": " << to_string(res->verdict) << " (residual "
        << num(res->residual) << ")\n";
}

} // namespace

int exit_code_for(ErrorClass cls) noexcept {
    switch (cls) {
    case ErrorClass::Parse: return kExitParse;
    case ErrorClass::Validation: return kExitValidation;
    case ErrorClass::Contract: return kExitContract;
    }
    return kExitContract;
}

void report_decompose(const Observable &obs, const RunConfig &config,
                      std::ostream &out) {
    if (machine(config)) {
        out << "dim=" << obs.dim() << '\n';
        out << "outcomes=" << obs.size() << '\n';
        for (std::size_t k = 0; k < obs.size(); ++k) {
            const auto &p = obs.pair(k);
            out << "eigenvalue." << k << '=' << exact(p.eigenvalue) << '\n';
            out << "multiplicity." << k << '=' << p.multiplicity << '\n';
            out << "trace." << k << '=' << exact(p.projector.trace().real()) << '\n';
        }
        return;
    }
    out << "# spectral decomposition: dim " << obs.dim() << ", " << obs.size()
        << " distinct eigenvalue(s)\n";
    out << "# k  eigenvalue  multiplicity  trace(P_k)\n";
    for (std::size_t k = 0; k < obs.size(); ++k) {
        const auto &p = obs.pair(k);
        out << k << "  " << num(p.eigenvalue) << "  " << p.multiplicity << "  "
            << num(p.projector.trace().real()) << '\n';
    }
}

void report_born(const Observable &obs, const DensityOperator &z,
                 const RunConfig &config, std::ostream &out) {
    print_distribution(born(obs, z, config.tol), config, out);
}

void report_measure(const Observable &obs, const DensityOperator &z,
                    const MeasureRequest &request, const RunConfig &config,
                    std::ostream &out) {
    const auto dist = born(obs, z, config.tol);
    ComplexMatrix result;
    std::string what;
    if (request.outcome) {
        const std::size_t k = *request.outcome;
        std::optional<SubensembleState> branch;
        switch (request.rule) {
        case Rule::Lueders:
            branch = lueders_select(obs, k, z);
            break;
        case Rule::Theta: {
            const auto fam = request.basis ? make_theta_family(obs, *request.basis, config.tol)
                                           : lueders_family(obs);
            branch = theta_select(fam, k, z);
            break;
        }
        case Rule::VonNeumann:
            throw UsageError("--rule vonneumann supports --aggregate only");
        }
        if (request.normalize) {
            result = normalize(*branch).matrix();
            what = "normalized selection of outcome " + std::to_string(k);
        } else {
            result = branch->matrix();
            what = "selection of outcome " + std::to_string(k) + " (unnormalized)";
        }
    } else {
        switch (request.rule) {
        case Rule::Lueders:
            result = lueders_aggregate(obs, z).matrix();
            break;
        case Rule::VonNeumann:
            result = von_neumann_aggregate(obs, z, request.basis, config.tol).matrix();
            break;
        case Rule::Theta: {
            const auto fam = request.basis ? make_theta_family(obs, *request.basis, config.tol)
                                           : lueders_family(obs);
            result = theta_aggregate(fam, z).matrix();
            break;
        }
        }
        what = "aggregate";
    }
    const double trace = result.trace().real();
    const double purity = trace_of_product(result, result).real();
    if (machine(config)) {
        out << "rule=" << rule_name(request.rule) << '\n';
        out << "mode=" << (request.outcome ? "select" : "aggregate") << '\n';
        if (request.outcome) {
            out << "outcome=" << *request.outcome << '\n';
        }
        print_distribution(dist, config, out);
        out << "trace=" << exact(trace) << '\n';
        out << "purity=" << exact(purity) << '\n';
    } else {
        out << "# rule " << rule_name(request.rule) << ", " << what << '\n';
        print_distribution(dist, config, out);
        out << "# resulting state: trace " << num(trace) << ", Tr(Z^2) " << num(purity)
            << '\n';
    }
    out << format_matrix(result);
}

void report_compat(const Observable &r, const Observable &s,
                   const std::optional<ComplexMatrix> &u1,
                   const std::optional<ComplexMatrix> &u2, ModeSelection mode,
                   const RunConfig &config, std::ostream &out) {
    const CompatConfig cc{config.tol, mode, config.samples, config.seed};
    const auto report = compat_report(r, s, u1, u2, cc);
    if (machine(config)) {
        print_condition("c1.exact", report.c1_exact, config, out);
        print_condition("c1.sampled", report.c1_sampled, config, out);
        print_condition("c2.exact", report.c2_exact, config, out);
        print_condition("c2.sampled", report.c2_sampled, config, out);
        out << "commutator.residual=" << exact(report.commutator_residual) << '\n';
        if (report.witness) {
            out << "witness.k=" << report.witness->k << '\n';
            out << "witness.j=" << report.witness->j << '\n';
            if (report.witness->l) {
                out << "witness.l=" << *report.witness->l << '\n';
            }
        }
    } else {
        out << "# compatibility report (dim " << r.dim() << ", tol " << num(config.tol)
            << (u1 || u2 ? ", Heisenberg-evolved" : "") << ")\n";
        out << "condition 1 (repeatability after interposed selection): "
            << to_string(report.condition1) << '\n';
        print_condition("exact", report.c1_exact, config, out);
        print_condition("sampled", report.c1_sampled, config, out);
        out << "condition 2 (statistics unchanged by interposed measurement): "
            << to_string(report.condition2) << '\n';
        print_condition("exact", report.c2_exact, config, out);
        print_condition("sampled", report.c2_sampled, config, out);
        out << "commutator: " << to_string(report.commute) << " (‖RS − SR‖_max "
            << num(report.commutator_residual) << ")\n";
        if (report.witness) {
            out << "worst violation at k=" << report.witness->k
                << " j=" << report.witness->j;
            if (report.witness->l) {
                out << " l=" << *report.witness->l;
            }
            out << '\n';
            if (report.witness->state) {
                out << "# witness state\n" << format_matrix(report.witness->state->matrix());
            }
        }
    }
    out << verdict_line(report) << '\n';
}

void report_constraint(const Observable &r, const Constraint &n,
                       const ConstraintRequest &request, const RunConfig &config,
                       std::ostream &out) {
    const auto meas = measurable_under(r, n, config.tol);
    std::vector<OutcomeResidual> worst;
    for (const auto &z : request.states) {
        const auto rows = preserves_constraint(r, n, z, config.tol);
        if (worst.empty()) {
            worst = rows;
            continue;
        }
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (rows[k].residual > worst[k].residual) {
                worst[k].residual = rows[k].residual;
                worst[k].weight = rows[k].weight;
            }
            worst[k].preserved = worst[k].preserved && rows[k].preserved;
        }
    }
    bool all = true;
    for (const auto &row : worst) {
        all = all && row.preserved;
    }
    if (machine(config)) {
        out << "constraint=" << n.label() << '\n';
        out << "measurable=" << yes_no(meas.measurable) << '\n';
        out << "projector_commutator.residual=" << exact(meas.projector_residual) << '\n';
        out << "commutator.residual=" << exact(meas.commutator_residual) << '\n';
        out << "states=" << request.states.size() << '\n';
        for (const auto &row : worst) {
            out << "preserved." << row.outcome << '=' << yes_no(row.preserved) << '\n';
            out << "residual." << row.outcome << '=' << exact(row.residual) << '\n';
        }
        out << "all_preserved=" << yes_no(all) << '\n';
        return;
    }
    out << "# constraint " << n.label() << ", " << request.states.size()
        << (request.randomized ? " random constrained state(s)" : " state(s)") << '\n';
    out << "measurable: " << yes_no(meas.measurable) << " (max ‖[P_k, N]‖ "
        << num(meas.projector_residual) << ", ‖[R, N]‖ " << num(meas.commutator_residual)
        << ")\n";
    out << "# outcome  eigenvalue  max ‖N Z_k'‖  preserved\n";
    for (const auto &row : worst) {
        out << row.outcome << "  " << num(row.eigenvalue) << "  " << num(row.residual)
            << "  " << yes_no(row.preserved) << '\n';
    }
    out << "all outcomes preserve the constraint: " << yes_no(all) << '\n';
}

namespace {

template <typename Fn>
auto with_path(const std::string &path, Fn &&load) {
    try {
        return load();
    } catch (const Error &e) {
        throw Error(e.code(), path + ": " + e.detail(), e.value());
    }
}

Observable load_observable(const std::string &path, const RunConfig &config) {
    return with_path(path, [&] {
        return load_observable_file(path, config.cluster_tol, config.tol);
    });
}

DensityOperator load_state(const std::string &path, const RunConfig &config) {
    return with_path(path, [&] { return validate(load_matrix_file(path), config.tol); });
}

ComplexMatrix load_plain(const std::string &path) {
    return with_path(path, [&] { return load_matrix_file(path); });
}

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Projective measurement calculus on finite-dimensional density operators"};
    app.require_subcommand(1);

    RunConfig config;
    std::string format = "text";
    app.add_option("--tol", config.tol, "Absolute tolerance for checks")
        ->check(CLI::PositiveNumber);
    app.add_option("--cluster-tol", config.cluster_tol,
                   "Relative tolerance for merging eigenvalues")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", config.seed, "Seed for random states");
    app.add_option("--samples", config.samples, "Random states per sampled check")
        ->check(CLI::PositiveNumber);
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "machine"}));

    auto *decompose = app.add_subcommand("decompose", "Spectral table of a Hermitian matrix");
    std::string decompose_file;
    decompose->add_option("file", decompose_file, "Matrix file")->required();

    auto *born_cmd = app.add_subcommand("born", "Outcome probabilities");
    std::string born_obs;
    std::string born_state;
    born_cmd->add_option("--observable", born_obs, "Observable file")->required();
    born_cmd->add_option("--state", born_state, "State file")->required();

    auto *measure = app.add_subcommand("measure", "Apply a measurement rule to a state");
    std::string m_obs;
    std::string m_state;
    std::string m_rule = "lueders";
    std::string m_basis;
    std::optional<std::size_t> m_outcome;
    bool m_select = false;
    bool m_aggregate = false;
    bool m_normalize = false;
    measure->add_option("--observable", m_obs, "Observable file")->required();
    measure->add_option("--state", m_state, "State file")->required();
    measure->add_option("--rule", m_rule, "State-change rule")
        ->check(CLI::IsMember({"lueders", "vonneumann", "theta"}));
    measure->add_option("--outcome", m_outcome, "Outcome index k for --select");
    auto *sel = measure->add_flag("--select", m_select, "Keep only outcome k");
    auto *agg = measure->add_flag("--aggregate", m_aggregate, "Recombine all outcomes");
    sel->excludes(agg);
    measure->add_flag("--normalize", m_normalize, "Rescale a selection to unit trace");
    measure->add_option("--basis", m_basis,
                        "Matrix whose columns are the per-outcome basis vectors");

    auto *compat = app.add_subcommand("compat", "Compatibility report for two observables");
    std::string c_r;
    std::string c_s;
    std::string c_u1;
    std::string c_u2;
    std::string c_mode = "both";
    compat->add_option("--r", c_r, "Observable R")->required();
    compat->add_option("--s", c_s, "Observable S")->required();
    compat->add_option("--u1", c_u1, "Unitary evolving R");
    compat->add_option("--u2", c_u2, "Unitary evolving S");
    compat->add_option("--mode", c_mode, "Check mode")
        ->check(CLI::IsMember({"exact", "sampled", "both"}));

    auto *constraint = app.add_subcommand("constraint", "Measurability under a null constraint");
    std::string k_n;
    std::string k_exchange;
    std::size_t k_localdim = 2;
    std::string k_r;
    std::string k_state;
    std::optional<std::size_t> k_random;
    auto *n_opt = constraint->add_option("--n", k_n, "Constraint operator file");
    auto *ex_opt = constraint->add_option("--exchange", k_exchange, "Two-particle exchange constraint")
                       ->check(CLI::IsMember({"sym", "antisym"}));
    n_opt->excludes(ex_opt);
    constraint->add_option("--localdim", k_localdim, "Single-particle dimension");
    constraint->add_option("--r", k_r, "Observable file")->required();
    auto *st_opt = constraint->add_option("--state", k_state, "State file");
    auto *rnd_opt = constraint->add_option("--random", k_random, "Number of random constrained states");
    st_opt->excludes(rnd_opt);

    auto *demo = app.add_subcommand("demo", "Run every worked example");

    for (auto *sub : {decompose, born_cmd, measure, compat, constraint, demo}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitParse;
    }
    config.format = format == "machine" ? OutputFormat::Machine : OutputFormat::Text;

    try {
        if (*decompose) {
            report_decompose(load_observable(decompose_file, config), config, out);
        } else if (*born_cmd) {
            report_born(load_observable(born_obs, config), load_state(born_state, config),
                        config, out);
        } else if (*measure) {
            if (m_select && !m_outcome) {
                throw UsageError("--select requires --outcome");
            }
            if (m_outcome && m_aggregate) {
                throw UsageError("--outcome cannot be combined with --aggregate");
            }
            if (m_normalize && !m_outcome) {
                throw UsageError("--normalize applies to --select only");
            }
            const auto obs = load_observable(m_obs, config);
            const auto z = load_state(m_state, config);
            MeasureRequest req;
            req.rule = m_rule == "vonneumann" ? Rule::VonNeumann
                       : m_rule == "theta"    ? Rule::Theta
                                              : Rule::Lueders;
            req.outcome = m_outcome;
            req.normalize = m_normalize;
            if (!m_basis.empty()) {
                req.basis = split_by_outcome(obs, columns_of(load_plain(m_basis)));
            }
            report_measure(obs, z, req, config, out);
        } else if (*compat) {
            const auto r = load_observable(c_r, config);
            const auto s = load_observable(c_s, config);
            std::optional<ComplexMatrix> u1;
            std::optional<ComplexMatrix> u2;
            if (!c_u1.empty()) {
                u1 = load_plain(c_u1);
            }
            if (!c_u2.empty()) {
                u2 = load_plain(c_u2);
            }
            const auto mode = c_mode == "exact"     ? ModeSelection::Exact
                              : c_mode == "sampled" ? ModeSelection::Sampled
                                                    : ModeSelection::Both;
            report_compat(r, s, u1, u2, mode, config, out);
        } else if (*constraint) {
            if (k_n.empty() == k_exchange.empty()) {
                throw UsageError("give exactly one of --n or --exchange");
            }
            if (k_state.empty() && !k_random) {
                throw UsageError("give --state FILE or --random N");
            }
            const Constraint n = k_exchange.empty()
                                     ? Constraint(load_plain(k_n), k_n)
                                     : make_exchange_constraint(k_localdim, k_exchange == "sym");
            const auto r = load_observable(k_r, config);
            ConstraintRequest req;
            if (k_random) {
                req.randomized = true;
                for (std::size_t i = 0; i < *k_random; ++i) {
                    req.states.push_back(random_constrained_state(
                        n, n.dim(), derive_seed(config.seed, i), config.tol));
                }
            } else {
                req.states.push_back(load_state(k_state, config));
            }
            report_constraint(r, n, req, config, out);
        } else if (*demo) {
            return run_demo(config, out);
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.error_class());
    }
    return kExitOk;
}

} // namespace qmeasure::cli
