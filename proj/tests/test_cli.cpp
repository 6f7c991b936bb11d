// Copyright 2026 The weakinv Authors
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

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string output;
};

Result run_cli(const std::string& args) {
  const std::string cmd = std::string(WEAKINV_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) out += buf;
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::path(WEAKINV_SCRATCH) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path write_config(const fs::path& dir, const std::string& name, const json& j) {
  const fs::path p = dir / name;
  std::ofstream(p) << j.dump(2);
  return p;
}

}  // namespace

TEST_CASE("simulate amp-damp defaults") {
  const fs::path out = scratch("sim");
  const Result r = run_cli("simulate --scenario amp-damp --out " + out.string());
  CHECK(r.code == 0);
  CHECK(fs::exists(out / "state.csv"));
  const json m = json::parse(slurp(out / "monitors.json"));
  CHECK(m.at("ok") == true);
  CHECK(m.at("max_trace_drift").get<double>() <= 1e-10);
}

TEST_CASE("zero steps is a config error") {
  const fs::path dir = scratch("zero");
  const fs::path cfg = write_config(dir, "c.json", {{"scenario", "amp-damp"}, {"grid", {{"n_steps", 0}}}});
  const Result r = run_cli("simulate --config " + cfg.string() + " --out " + dir.string());
  CHECK(r.code == 1);
  CHECK(r.output.find("grid.n_steps must be ≥ 1") != std::string::npos);
}

TEST_CASE("malformed configs exit 1 naming the field") {
  const fs::path dir = scratch("bad");
  const fs::path cfg = write_config(dir, "c.json", {{"scenario", "amp-damp"}, {"method", "euler"}});
  Result r = run_cli("simulate --config " + cfg.string() + " --out " + dir.string());
  CHECK(r.code == 1);
  CHECK(r.output.find("method") != std::string::npos);

  std::ofstream(dir / "broken.json") << "{ not json";
  r = run_cli("simulate --config " + (dir / "broken.json").string());
  CHECK(r.code == 1);

  r = run_cli("simulate --config " + (dir / "missing.json").string());
  CHECK(r.code == 1);

  r = run_cli("frobnicate");
  CHECK(r.code == 1);
}

TEST_CASE("top Fock level trips the leakage monitor") {
  const fs::path dir = scratch("leak");
  const fs::path cfg = write_config(
      dir, "c.json", {{"scenario", "damped-ho"}, {"rho0", "top"}, {"grid", {{"t_end", 1.0}, {"n_steps", 500}}}});
  const Result r = run_cli("simulate --config " + cfg.string() + " --out " + dir.string());
  CHECK(r.code == 2);
  const json m = json::parse(slurp(dir / "monitors.json"));
  CHECK(m.at("flags").at("leakage") == true);
  CHECK(m.at("ok") == false);
}

TEST_CASE("invariant command") {
  SUBCASE("amp-damp sz is weak and conserved") {
    const fs::path out = scratch("inv");
    const Result r = run_cli("invariant --scenario amp-damp --invariant-seed sz --steps 3000 --out " + out.string());
    CHECK(r.code == 0);
    const json rep = json::parse(slurp(out / "invariant_report.json"));
    CHECK(rep.at("classification") == "weak");
    std::istringstream csv(slurp(out / "expectation.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "t,expectation");
    while (std::getline(csv, line)) CHECK(std::abs(std::stod(line.substr(line.find(',') + 1)) + 1.0) <= 1e-8);
    CHECK(fs::exists(out / "spectrum.csv"));
  }
  SUBCASE("identity seed") {
    const fs::path out = scratch("inv_id");
    const Result r = run_cli("invariant --scenario dephase --invariant-seed identity --steps 500 --out " + out.string());
    CHECK(r.code == 0);
    CHECK(json::parse(slurp(out / "invariant_report.json")).at("classification") == "strong-like");
  }
  SUBCASE("unitary override with the hamiltonian seed") {
    const fs::path dir = scratch("inv_h");
    const fs::path cfg = write_config(dir, "c.json",
                                      {{"scenario", "amp-damp"}, {"params", {{"gamma", 0.0}}}, {"invariant_seed", "hamiltonian"}});
    const Result r = run_cli("invariant --config " + cfg.string() + " --steps 500 --out " + dir.string());
    CHECK(r.code == 0);
    CHECK(json::parse(slurp(dir / "invariant_report.json")).at("classification") == "strong-like");
  }
  SUBCASE("blow-up past the cap exits 2 with the step") {
    const fs::path dir = scratch("inv_cap");
    const fs::path cfg = write_config(dir, "c.json",
                                      {{"scenario", "amp-damp"}, {"invariant_seed", "sz"}, {"grid", {{"t_end", 40.0}, {"n_steps", 4000}}}});
    const Result r = run_cli("invariant --config " + cfg.string() + " --out " + dir.string());
    CHECK(r.code == 2);
    CHECK(r.output.find("step") != std::string::npos);
  }
}

TEST_CASE("action-check") {
  SUBCASE("amp-damp residuals shrink when steps double") {
    const fs::path a = scratch("act1000");
    const fs::path b = scratch("act2000");
    const std::string base = "action-check --scenario amp-damp --lambda-final sz ";
    const fs::path cfg = write_config(a, "c.json", {{"grid", {{"t_end", 1.0}}}});
    CHECK(run_cli(base + "--config " + cfg.string() + " --steps 1000 --out " + a.string()).code == 0);
    CHECK(run_cli(base + "--config " + cfg.string() + " --steps 2000 --out " + b.string()).code == 0);
    const json ra = json::parse(slurp(a / "action_report.json"));
    const json rb = json::parse(slurp(b / "action_report.json"));
    const double ratio = ra.at("grad_rho_residual").get<double>() / rb.at("grad_rho_residual").get<double>();
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.1));
    CHECK(ra.at("gauge").at("defect").get<double>() <= 1e-10);
  }
  SUBCASE("trivial inline model") {
    const fs::path dir = scratch("act_trivial");
    const json zero = {{0, 0}, {0, 0}, {0, 0}, {0, 0}};
    const fs::path cfg = write_config(dir, "c.json",
                                      {{"model", {{"dim", 2}, {"hamiltonian", zero}, {"channels", json::array()}}},
                                       {"grid", {{"t_start", 0.0}, {"t_end", 1.0}, {"n_steps", 100}}},
                                       {"rho0", "ground"},
                                       {"lambda_final", zero}});
    const Result r = run_cli("action-check --config " + cfg.string() + " --out " + dir.string());
    CHECK(r.code == 0);
    const json rep = json::parse(slurp(dir / "action_report.json"));
    CHECK(rep.at("action").get<double>() == 0.0);
    CHECK(rep.at("grad_rho_residual").get<double>() <= 1e-13);
    CHECK(rep.at("grad_lam_residual").get<double>() <= 1e-13);
  }
  SUBCASE("missing lambda_final") {
    const Result r = run_cli("action-check --scenario amp-damp --out " + scratch("act_missing").string());
    CHECK(r.code == 1);
    CHECK(r.output.find("lambda_final") != std::string::npos);
  }
}

TEST_CASE("verify command") {
  const fs::path out = scratch("verify");
  CHECK(run_cli("verify --seed 42 --trials 20 --out " + out.string()).code == 0);
  CHECK(json::parse(slurp(out / "verify_report.json")).at("all_passed") == true);
  CHECK(run_cli("verify --trials 1 --out " + out.string()).code == 0);
  CHECK(run_cli("verify --seed 1 --trials 5 --break-adjoint --out " + out.string()).code == 2);
  CHECK(run_cli("verify --trials 0").code == 1);
}

TEST_CASE("identical runs produce identical files") {
  const fs::path a = scratch("det_a");
  const fs::path b = scratch("det_b");
  for (const fs::path& out : {a, b}) {
    REQUIRE(run_cli("invariant --scenario damped-ho --steps 300 --out " + out.string()).code == 0);
    REQUIRE(run_cli("action-check --scenario amp-damp --lambda-final sz --steps 400 --seed 9 --out " + out.string()).code == 0);
    REQUIRE(run_cli("verify --seed 3 --trials 3 --out " + out.string()).code == 0);
  }
  for (const char* f : {"expectation.csv", "spectrum.csv", "invariant_report.json", "action_report.json", "verify_report.json"}) {
    CAPTURE(f);
    CHECK(slurp(a / f) == slurp(b / f));
  }
}

TEST_CASE("parallel sweep over several configs") {
  const fs::path dir = scratch("sweep");
  const fs::path c1 = write_config(dir, "one.json", {{"scenario", "amp-damp"}, {"grid", {{"n_steps", 200}}}});
  const fs::path c2 = write_config(dir, "two.json", {{"scenario", "dephase"}, {"grid", {{"n_steps", 200}}}});
  const Result r = run_cli("simulate --config " + c1.string() + " --config " + c2.string() + " --out " + dir.string());
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "one" / "state.csv"));
  CHECK(fs::exists(dir / "two" / "state.csv"));
}
