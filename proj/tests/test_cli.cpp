// Copyright 2026 The hamkernel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Drives the built executable through the shell.

#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "hamkernel/io.hpp"

namespace fs = std::filesystem;
using namespace hamkernel;

namespace {

struct RunResult {
  int status;
  std::string output;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string("\"") + HAMKERNEL_CLI + "\" " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe) != nullptr) out += buf.data();
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "hamkernel_test_cli" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string value_after(const std::string& text, const std::string& key) {
  const auto pos = text.find(key);
  if (pos == std::string::npos) return {};
  const auto start = pos + key.size();
  return text.substr(start, text.find('\n', start) - start);
}

}  // namespace

TEST_CASE("generate reproduces the benchmark sample counts") {
  const fs::path out = fresh_dir("generate");
  const RunResult osc = run("generate --system oscillator --out " + out.string());
  CHECK(osc.status == 0);
  CHECK(osc.output.find("N = 15") != std::string::npos);
  const RunResult pen = run("generate --system pendulum --out " + out.string());
  CHECK(pen.status == 0);
  CHECK(pen.output.find("N = 24") != std::string::npos);
  CHECK(fs::exists(out / "oscillator_seed0_dataset.csv"));
  CHECK(fs::exists(out / "oscillator_seed0_dataset.meta.json"));
  CHECK(io::read_dataset(out / "pendulum_seed0_dataset.csv").size() == 24);
}

TEST_CASE("noise-free datasets do not depend on the seed") {
  const fs::path out = fresh_dir("noiseless");
  REQUIRE(run("generate --system oscillator --noise-std 0 --seed 1 --out " + out.string()).status == 0);
  REQUIRE(run("generate --system oscillator --noise-std 0 --seed 2 --out " + out.string()).status == 0);
  const std::string a = slurp(out / "oscillator_seed1_dataset.csv");
  CHECK_FALSE(a.empty());
  CHECK(a == slurp(out / "oscillator_seed2_dataset.csv"));
}

TEST_CASE("custom recipe via flags") {
  const fs::path out = fresh_dir("custom");
  const RunResult r = run("generate --system oscillator --params m=1,k=4 --ics \"1,0;0,1\" --dt 0.1 --t-end 0.5 "
                          "--noise-std 0 --out " + out.string());
  REQUIRE(r.status == 0);
  CHECK(r.output.find("N = 12") != std::string::npos);
  const Dataset d = io::read_dataset(out / "oscillator_seed0_dataset.csv");
  CHECK(d.meta.params.at("k") == 4.0);
  CHECK(d.derivatives[0](1) == -4.0);
}

TEST_CASE("config file values are overridden by flags") {
  const fs::path out = fresh_dir("config");
  const fs::path cfg = out / "recipe.toml";
  io::write_text(cfg, "[generate]\nsystem = \"pendulum\"\nseed = 3\n");
  const RunResult r = run("generate --config " + cfg.string() + " --seed 4 --out " + out.string());
  REQUIRE(r.status == 0);
  CHECK(r.output.find("N = 24") != std::string::npos);
  CHECK(fs::exists(out / "pendulum_seed4_dataset.csv"));
}

TEST_CASE("tune, train, rollout, evaluate and field pipeline") {
  const fs::path out = fresh_dir("pipeline");
  const std::string o = " --out " + out.string();
  REQUIRE(run("generate --system oscillator --seed 7" + o).status == 0);
  const std::string data = (out / "oscillator_seed7_dataset.csv").string();

  const RunResult tune = run("tune --dataset " + data + " --kernel odd_symplectic --grid-sigma 3,12.1 "
                             "--grid-lambda 1e-4,1e-2 --seed 7" + o);
  REQUIRE(tune.status == 0);
  const fs::path table = out / "oscillator_seed7_odd_symplectic_cv.csv";
  REQUIRE(fs::exists(table));
  CHECK(slurp(table).rfind("sigma,lambda,cv_mse\n", 0) == 0);
  const std::string sigma = value_after(tune.output, "sigma = ");
  const std::string lambda = value_after(tune.output, "lambda = ");
  REQUIRE_FALSE(sigma.empty());

  const RunResult train = run("train --dataset " + data + " --kernel odd_symplectic --sigma " + sigma +
                              " --lambda " + lambda + o);
  REQUIRE(train.status == 0);
  CHECK(io::parse_double(value_after(train.output, "max relative residual = ")) <= 1e-8);
  const fs::path model = out / "oscillator_seed7_odd_symplectic_model.json";
  REQUIRE(fs::exists(model));
  CHECK(io::load_model(model).spec().sigma == io::parse_double(sigma));

  const RunResult roll = run("rollout --system oscillator --model " + model.string() + " --x0 2,0 --dt 0.25 --t-end 4" + o);
  REQUIRE(roll.status == 0);
  CHECK(fs::exists(out / "oscillator_seed7_odd_symplectic_rollout.csv"));

  const RunResult eval = run("evaluate --system oscillator --model " + model.string() + o);
  REQUIRE(eval.status == 0);
  CHECK(io::parse_double(value_after(eval.output, "odd error: mean ").substr(0, value_after(eval.output, "odd error: mean ").find(' '))) <= 1e-10);
  CHECK(fs::exists(out / "oscillator_seed7_odd_symplectic_table1_odd_error.csv"));
  CHECK(fs::exists(out / "oscillator_seed7_odd_symplectic_table2_hamiltonian.csv"));

  const RunResult field = run("field --system oscillator --nx 5 --ny 4" + o);
  REQUIRE(field.status == 0);
  CHECK(field.output.find("rows = 20") != std::string::npos);
  CHECK(fs::exists(out / "oscillator_true_field.csv"));
  CHECK_FALSE(fs::exists(out / ".staging"));
}

TEST_CASE("failures exit nonzero and quarantine partial output") {
  const fs::path out = fresh_dir("failure");
  const std::string o = " --out " + out.string();

  const RunResult bad_sigma = run("generate --system oscillator --params k=-1" + o);
  CHECK(bad_sigma.status != 0);
  CHECK(bad_sigma.output.find("error:") != std::string::npos);

  const RunResult missing = run("train --dataset " + (out / "nope.csv").string() + " --sigma 1 --lambda 1" + o);
  CHECK(missing.status != 0);

  REQUIRE(run("generate --system oscillator" + o).status == 0);
  const std::string data = (out / "oscillator_seed0_dataset.csv").string();
  const RunResult no_lambda = run("train --dataset " + data + " --sigma 1" + o);
  CHECK(no_lambda.status == 2);
  const RunResult too_many_folds = run("tune --dataset " + data + " --folds 16" + o);
  CHECK(too_many_folds.status != 0);

  CHECK(fs::exists(out / "quarantine" / "train"));
  CHECK(fs::exists(out / "quarantine" / "tune"));
  CHECK_FALSE(fs::exists(out / "oscillator_seed0_odd_symplectic_cv.csv"));
  CHECK_FALSE(fs::exists(out / ".staging"));

  CHECK(run("frobnicate" + o).status != 0);
}

TEST_CASE("repro writes the full experiment") {
  const fs::path out = fresh_dir("repro");
  const RunResult r = run("repro oscillator --seed 7 --out " + out.string());
  REQUIRE(r.status == 0);
  const fs::path dir = out / "oscillator_seed7";
  const std::string p = "oscillator_seed7_";
  for (const char* name : {"dataset.csv", "dataset.meta.json", "field_true.csv", "table1_odd_error.csv",
                           "table2_hamiltonian.csv", "summary.txt", "separable_gaussian_model.json",
                           "odd_symplectic_model.json", "separable_gaussian_rollout.csv", "odd_symplectic_rollout.csv",
                           "separable_gaussian_cv.csv", "odd_symplectic_cv.csv", "separable_gaussian_field.csv",
                           "odd_symplectic_field.csv"}) {
    CHECK_MESSAGE(fs::exists(dir / (p + name)), name);
  }
  const std::string table1 = slurp(dir / (p + "table1_odd_error.csv"));
  CHECK(table1.rfind("model,mean,variance\ntrue,0,0\n", 0) == 0);
  CHECK(table1.find("separable_gaussian,") != std::string::npos);
  CHECK(table1.find("odd_symplectic,") != std::string::npos);
  CHECK(slurp(dir / (p + "table2_hamiltonian.csv")).rfind("hamiltonian,mean,variance,offset\nreal,", 0) == 0);

  CHECK(r.output.find("odd_symplectic odd error mean <= 1e-10 and variance <= 1e-20: PASS") != std::string::npos);
  CHECK(r.output.find("odd_symplectic rollout mean error < separable_gaussian: PASS") != std::string::npos);
}

TEST_CASE("repro reports the failing stage") {
  const fs::path out = fresh_dir("repro_fail");
  const RunResult r = run("repro oscillator --folds 40 --out " + out.string());
  CHECK(r.status != 0);
  CHECK(r.output.find("tune") != std::string::npos);
  CHECK(fs::exists(out / "quarantine" / "repro"));
}
