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

#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace qmeasure::cli {
namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    args.insert(args.begin(), "qmeasure");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string &name) { return std::string(QMEASURE_TEST_DATA) + "/" + name; }

bool has(const std::string &text, const std::string &needle) {
    return text.find(needle) != std::string::npos;
}

TEST(Cli, DecomposeTable) {
    const auto r = cli({"decompose", data("diag225.txt")});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(has(r.out, "\n0  2  2  2\n1  5  1  1\n")) << r.out;
    const auto m = cli({"--format", "machine", "decompose", data("diag225.txt")});
    EXPECT_TRUE(has(m.out, "multiplicity.0=2\n")) << m.out;
    EXPECT_TRUE(has(m.out, "eigenvalue.1=5\n")) << m.out;
}

TEST(Cli, DecomposeIdentityIsOneRow) {
    const auto r = cli({"decompose", data("identity3.txt")});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(has(r.out, "\n0  1  3  3\n")) << r.out;
    EXPECT_FALSE(has(r.out, "\n1  ")) << r.out;
}

TEST(Cli, NonHermitianIsParseClass) {
    const auto r = cli({"decompose", data("sigma_y.txt")});
    EXPECT_EQ(r.code, kExitParse);
    EXPECT_TRUE(has(r.err, "NotHermitian")) << r.err;
}

TEST(Cli, MeasureWorkedTriple) {
    const auto r = cli({"--format", "machine", "measure", "--observable", data("diag225.txt"),
                        "--state", data("uniform3.txt"), "--rule", "lueders", "--aggregate"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(has(r.out, "probability.0=0.666666666666666")) << r.out;
    EXPECT_TRUE(has(r.out, "probability.1=0.333333333333333")) << r.out;
    EXPECT_TRUE(has(r.out, "dim 3\n0.333333333333333+0i 0.333333333333333+0i 0+0i\n")) << r.out;
}

TEST(Cli, MeasureRulesAndSelection) {
    const auto vn = cli({"measure", "--observable", data("diag225.txt"), "--state",
                         data("uniform3.txt"), "--rule", "vonneumann"});
    ASSERT_EQ(vn.code, 0) << vn.err;
    EXPECT_TRUE(has(vn.out, "0.333333333333333+0i 0+0i 0+0i\n")) << vn.out;
    const auto sel = cli({"measure", "--observable", data("diag225.txt"), "--state",
                          data("uniform3.txt"), "--select", "--outcome", "0", "--normalize"});
    ASSERT_EQ(sel.code, 0) << sel.err;
    EXPECT_TRUE(has(sel.out, "Tr(Z^2) 1\n")) << sel.out;
    const auto th = cli({"measure", "--observable", data("spectral225.txt"), "--state",
                         data("uniform3.txt"), "--rule", "theta", "--outcome", "0", "--basis",
                         data("rotated_basis.txt")});
    ASSERT_EQ(th.code, 0) << th.err;
    // Θ₁(1,1,1)/√3 = (√2, 0, 0)/√3: all block weight lands on e1
    EXPECT_TRUE(has(th.out, "dim 3\n0.666666666666666")) << th.out;
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(cli({}).code, kExitParse);
    EXPECT_EQ(cli({"bogus"}).code, kExitParse);
    EXPECT_EQ(cli({"measure", "--observable", data("diag225.txt"), "--state",
                   data("uniform3.txt"), "--select"})
                  .code,
              kExitParse);
    EXPECT_EQ(cli({"--format", "json", "demo"}).code, kExitParse);
    EXPECT_EQ(cli({"constraint", "--r", data("total_z.txt"), "--random", "2"}).code, kExitParse);
    EXPECT_EQ(cli({"--help"}).code, kExitOk);
}

TEST(Cli, ExitCodeTaxonomy) {
    EXPECT_EQ(cli({"decompose", data("malformed.txt")}).code, kExitParse);
    EXPECT_EQ(cli({"decompose", data("missing.txt")}).code, kExitParse);
    EXPECT_EQ(cli({"born", "--observable", data("sigma_z.txt"), "--state", data("negative.txt")})
                  .code,
              kExitValidation);
    EXPECT_EQ(cli({"measure", "--observable", data("diag225.txt"), "--state",
                   data("uniform3.txt"), "--outcome", "9"})
                  .code,
              kExitContract);
    EXPECT_EQ(cli({"born", "--observable", data("sigma_z.txt"), "--state", data("uniform3.txt")})
                  .code,
              kExitContract);
}

TEST(Cli, CompatVerdictLine) {
    const auto r = cli({"compat", "--r", data("sigma_z.txt"), "--s", data("sigma_x.txt")});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(has(r.out, "verdict c1=false c2=false comm=false\n")) << r.out;
    const auto h = cli({"--format", "machine", "compat", "--r", data("sigma_z.txt"), "--s",
                        data("sigma_z.txt"), "--u2", data("hadamard.txt"), "--mode", "exact"});
    EXPECT_TRUE(has(h.out, "verdict c1=false c2=false comm=false\n")) << h.out;
    const auto same = cli({"compat", "--r", data("sigma_z.txt"), "--s", data("sigma_z.txt")});
    EXPECT_TRUE(has(same.out, "verdict c1=true c2=true comm=true\n")) << same.out;
}

TEST(Cli, ConstraintReports) {
    const auto ok = cli({"constraint", "--exchange", "sym", "--r", data("total_z.txt"),
                         "--random", "20"});
    ASSERT_EQ(ok.code, 0) << ok.err;
    EXPECT_TRUE(has(ok.out, "all outcomes preserve the constraint: true\n")) << ok.out;
    const auto bad = cli({"--format", "machine", "constraint", "--exchange", "sym", "--r",
                          data("single_z.txt"), "--state", data("symmetric_pair.txt")});
    ASSERT_EQ(bad.code, 0) << bad.err;
    EXPECT_TRUE(has(bad.out, "measurable=false\n")) << bad.out;
    EXPECT_TRUE(has(bad.out, "residual.0=0.25")) << bad.out;
    const auto violated = cli({"constraint", "--exchange", "sym", "--r", data("total_z.txt"),
                               "--state", data("product01.txt")});
    EXPECT_EQ(violated.code, kExitValidation);
}

TEST(Cli, OutputIsDeterministic) {
    const std::vector<std::string> args{"--seed", "4", "--format", "machine", "compat",
                                        "--r",    data("sigma_z.txt"),         "--s",
                                        data("sigma_x.txt")};
    EXPECT_EQ(cli(args).out, cli(args).out);
    EXPECT_EQ(cli({"demo"}).out, cli({"demo"}).out);
}

TEST(Demo, PassesAcrossSeedsAndFailsAtImpossibleTolerance) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        std::ostringstream os;
        RunConfig config;
        config.seed = seed;
        EXPECT_EQ(run_demo(config, os), kExitOk) << os.str();
    }
    std::ostringstream os;
    RunConfig strict;
    strict.tol = 1e-30;
    EXPECT_EQ(run_demo(strict, os), kExitFailure);
    EXPECT_TRUE(has(os.str(), "FAIL ")) << os.str();
}

} // namespace
} // namespace qmeasure::cli
