// Copyright 2026 The procmat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "procmat/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "procmat/pmfile.hpp"
#include "procmat/random.hpp"

using namespace procmat;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::path(PMTOOL_TEST_TMPDIR) / name).string();
}

std::string write_pm(const std::string& name, const ProcessMatrix& w) {
  const std::string path = temp_path(name);
  std::ofstream(path) << serialize_pm_file(w);
  return path;
}

ProcessMatrix product(const Matrix& rho, int d_out) {
  return ProcessMatrix(PartySpec::single(static_cast<int>(rho.rows()), d_out),
                       kron(rho, Matrix::Identity(d_out, d_out)));
}

}  // namespace

TEST(Cli, OcbGameReportsViolation) {
  const Outcome o = run({"ocb-game"});
  ASSERT_EQ(o.code, cli::kExitPass) << o.err;
  const json r = o.report();
  EXPECT_EQ(r["command"], "ocb-game");
  EXPECT_EQ(r["status"], "violated");
  EXPECT_NEAR(r["results"]["p_ocb"].get<double>(), 0.8535533905932738, 1e-12);
  EXPECT_EQ(r["results"]["causal_bound"].get<double>(), 0.75);
  EXPECT_EQ(r["tolerances"]["tol"].get<double>(), 1e-9);
}

TEST(Cli, EmitThenValidate) {
  const std::string path = temp_path("wocb.pm.json");
  ASSERT_EQ(run({"emit-ocb", path}).code, cli::kExitPass);
  const Outcome v = run({"validate", path});
  ASSERT_EQ(v.code, cli::kExitPass) << v.err;
  const json r = v.report();
  EXPECT_EQ(r["status"], "pass");
  EXPECT_EQ(r["results"]["constraints_checked"], 169);
  EXPECT_TRUE(r["results"]["violated_constraints"].empty());
  EXPECT_TRUE(r["results"]["sampled_check"]["ok"].get<bool>());

  const Outcome game = run({"ocb-game", path, "--eta", "iplus"});
  ASSERT_EQ(game.code, cli::kExitPass);
  EXPECT_NEAR(game.report()["results"]["p_ocb"].get<double>(), 0.8535533905932738, 1e-12);
}

TEST(Cli, EmitToStdoutParses) {
  const Outcome o = run({"emit-ocb", "-", "--label", "ocb"});
  ASSERT_EQ(o.code, cli::kExitPass);
  const PMFile f = parse_pm_file(o.out);
  EXPECT_EQ(f.label.value_or(""), "ocb");
  EXPECT_EQ(f.process.spec().size(), 2u);
}

TEST(Cli, ValidateFailsOnPerturbedMatrix) {
  const Matrix zz = kron(pauli(Pauli::Z), pauli(Pauli::Z));
  const std::string path =
      write_pm("zz.pm.json", ProcessMatrix(PartySpec::single(2, 2), Matrix::Identity(4, 4) / 2.0 + 0.1 * zz));
  const Outcome o = run({"validate", path});
  EXPECT_EQ(o.code, cli::kExitFail);
  const json r = o.report();
  EXPECT_EQ(r["status"], "fail");
  EXPECT_NEAR(r["results"]["worst_residual"].get<double>(), 0.2, 1e-12);
}

TEST(Cli, ReduceCertifiesProduct) {
  const Matrix rho = random_density(2, 8);
  const Outcome o = run({"reduce", write_pm("valid.pm.json", product(rho, 2))});
  ASSERT_EQ(o.code, cli::kExitPass) << o.err;
  const json r = o.report();
  EXPECT_EQ(r["status"], "pass");
  EXPECT_TRUE(r["results"]["agree"].get<bool>());
  const Matrix w1 = matrix_from_json(r["results"]["constructive"]["w1"]);
  EXPECT_LT((w1 - rho).norm(), 1e-12);
}

TEST(Cli, ReduceFailsOnPerturbation) {
  const Matrix w = kron(random_density(2, 8), Matrix::Identity(2, 2)) + 1e-3 * kron(pauli(Pauli::X), pauli(Pauli::Y));
  const std::string path = write_pm("perturbed.pm.json", ProcessMatrix(PartySpec::single(2, 2), w));
  for (const std::string oracle : {"both", "constructive", "projection"}) {
    const Outcome o = run({"reduce", path, "--oracle", oracle});
    EXPECT_EQ(o.code, cli::kExitFail) << oracle;
    EXPECT_EQ(o.report()["status"], "fail");
  }
  const json c = run({"reduce", path, "--oracle", "constructive"}).report();
  const json& v = c["results"]["constructive"]["violations"];
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0]["implied_word"], "x|y");
  EXPECT_NEAR(v[0]["implied_coefficient"].get<double>(), 1e-3, 1e-12);
}

TEST(Cli, ReduceOnQutrits) {
  const std::string path = write_pm("qutrit.pm.json", product(random_density(3, 1), 3));
  const Outcome o = run({"reduce", path});
  EXPECT_EQ(o.code, cli::kExitPass) << o.err;
  EXPECT_TRUE(o.report()["results"]["constructive"].is_null());
  EXPECT_EQ(run({"reduce", path, "--oracle", "constructive"}).code, cli::kExitUsage);
}

TEST(Cli, DecomposeAndCausalBound) {
  const Matrix zz = kron(pauli(Pauli::Z), pauli(Pauli::Z));
  const std::string path =
      write_pm("dec.pm.json", ProcessMatrix(PartySpec::single(2, 2), Matrix::Identity(4, 4) / 2.0 + 0.1 * zz));
  const Outcome d = run({"decompose", path});
  ASSERT_EQ(d.code, cli::kExitPass);
  const json r = d.report();
  EXPECT_EQ(r["status"], "value");
  EXPECT_NEAR(r["results"]["coefficients"]["1|1"].get<double>(), 0.5, 1e-15);
  EXPECT_NEAR(r["results"]["coefficients"]["z|z"].get<double>(), 0.1, 1e-15);
  EXPECT_EQ(r["results"]["coefficients"].size(), 2u);

  const Outcome c = run({"causal-bound"});
  ASSERT_EQ(c.code, cli::kExitPass);
  EXPECT_EQ(c.report()["results"]["causal_bound"].get<double>(), 0.75);
  EXPECT_EQ(c.report()["results"]["zero_communication"].get<double>(), 0.5);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"validate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"validate", temp_path("missing.pm.json")}).code, cli::kExitUsage);
  EXPECT_EQ(run({"ocb-game", "--eta", "minus"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--tol", "abc", "causal-bound"}).code, cli::kExitUsage);

  const std::string broken = temp_path("broken.pm.json");
  std::ofstream(broken) << "{\"parties\": [\n";
  const Outcome o = run({"validate", broken});
  EXPECT_EQ(o.code, cli::kExitUsage);
  EXPECT_NE(o.err.find("line"), std::string::npos);

  EXPECT_EQ(run({"reduce", temp_path("wocb.pm.json")}).code, cli::kExitUsage);
}

TEST(Cli, DeterministicForFixedSeed) {
  const std::string path = temp_path("det.pm.json");
  ASSERT_EQ(run({"emit-ocb", path}).code, cli::kExitPass);
  for (const std::vector<std::string> args :
       {std::vector<std::string>{"--seed", "7", "validate", path}, {"ocb-game"}, {"causal-bound"}, {"decompose", path}})
    EXPECT_EQ(run(args).out, run(args).out);
  EXPECT_NE(run({"--seed", "1", "validate", path, "--samples", "5"}).out,
            run({"--seed", "2", "validate", path, "--samples", "5"}).out);
}

TEST(Cli, PrettyOutput) {
  const Outcome o = run({"--pretty", "ocb-game"});
  ASSERT_EQ(o.code, cli::kExitPass);
  EXPECT_NE(o.out.find("status: \"violated\""), std::string::npos);
  EXPECT_NE(o.out.find("results.p_ocb:"), std::string::npos);
}

TEST(Cli, ToleranceFlagIsEchoed) {
  const Outcome o = run({"--tol", "1e-6", "causal-bound"});
  ASSERT_EQ(o.code, cli::kExitPass);
  EXPECT_EQ(o.report()["tolerances"]["tol"].get<double>(), 1e-6);
}
