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
#include <stdexcept>
#include <ostream>
#include <string>
#include <vector>

#include "qmeasure/channels.hpp"
#include "qmeasure/compatibility.hpp"
#include "qmeasure/constraints.hpp"
#include "qmeasure/error.hpp"
#include "qmeasure/observables.hpp"
#include "qmeasure/states.hpp"

namespace qmeasure::cli {

enum class OutputFormat { Text, Machine };

struct RunConfig {
    double tol = kDefaultTol;
    double cluster_tol = kDefaultClusterTol;
    std::uint64_t seed = 0;
    std::size_t samples = 100;
    OutputFormat format = OutputFormat::Text;
};

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1; // demo reported FAIL items
inline constexpr int kExitParse = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitContract = 4;

int exit_code_for(ErrorClass cls) noexcept;

/// Thrown for argument combinations the parser cannot reject by itself;
/// reported with the parse exit code.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Rule { Lueders, VonNeumann, Theta };

struct MeasureRequest {
    Rule rule = Rule::Lueders;
    std::optional<std::size_t> outcome; // set => select
    bool normalize = false;
    std::optional<BasisChoice> basis;
};

struct ConstraintRequest {
    std::vector<DensityOperator> states; // all must satisfy the constraint
    bool randomized = false;
};

// Report writers work on loaded, validated inputs so they can be driven
// from files (run_cli) or from memory (demo, tests).
void report_decompose(const Observable &obs, const RunConfig &config, std::ostream &out);
void report_born(const Observable &obs, const DensityOperator &z,
                 const RunConfig &config, std::ostream &out);
void report_measure(const Observable &obs, const DensityOperator &z,
                    const MeasureRequest &request, const RunConfig &config,
                    std::ostream &out);
void report_compat(const Observable &r, const Observable &s,
                   const std::optional<ComplexMatrix> &u1,
                   const std::optional<ComplexMatrix> &u2, ModeSelection mode,
                   const RunConfig &config, std::ostream &out);
void report_constraint(const Observable &r, const Constraint &n,
                       const ConstraintRequest &request, const RunConfig &config,
                       std::ostream &out);

/// Runs every worked example, printing one PASS/FAIL line each.
/// Returns kExitOk iff all pass.
int run_demo(const RunConfig &config, std::ostream &out);

/// Full command-line entry point; returns the process exit code.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace qmeasure::cli
