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

// hamkernel: learn Hamiltonian vector fields from trajectory data.
//
//   hamkernel generate --system oscillator --seed 3 --out data
//   hamkernel tune     --dataset data/oscillator_seed3_dataset.csv --kernel odd_symplectic
//   hamkernel train    --dataset ... --kernel odd_symplectic --sigma 12.1 --lambda 1e-4
//   hamkernel rollout  --model ... --system oscillator --x0 2,0 --t-end 4
//   hamkernel evaluate --model ... --system oscillator
//   hamkernel field    --model ... --box 0,4,-4,4 --nx 41 --ny 41
//   hamkernel repro    oscillator --seed 7 --out results
//
// Every command writes into --out (default $HAMKERNEL_OUT, else "out").
// Files are staged first; if the command fails they are moved to
// <out>/quarantine/<command> instead.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hamkernel/evaluate.hpp"
#include "hamkernel/experiment.hpp"
#include "hamkernel/io.hpp"
#include "hamkernel/regression.hpp"
#include "hamkernel/simulate.hpp"
#include "hamkernel/systems.hpp"
#include "hamkernel/tune.hpp"

namespace fs = std::filesystem;
using namespace hamkernel;

namespace {

struct Options {
  std::string system = "oscillator";
  std::string params;
  std::string ics;
  std::optional<double> dt;
  std::optional<double> t_end;
  std::optional<double> noise_std;
  std::uint64_t seed = 0;
  std::string kernel = "odd_symplectic";
  std::optional<double> sigma;
  std::optional<double> lambda;
  int folds = 5;
  std::string grid_sigma;
  std::string grid_lambda;
  std::string x0;
  std::string out = "out";
  std::string dataset;
  std::string model;
  std::string box;
  std::string integrator = "rk4";
  std::size_t samples = 10000;
  std::size_t nx = 41;
  std::size_t ny = 41;
  std::string experiment;
};

std::map<std::string, double> parse_params(const std::string& text) {
  std::map<std::string, double> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find(',', start), text.size());
    const std::string item = text.substr(start, end - start);
    const auto eq = item.find('=');
    require(eq != std::string::npos && eq > 0, "--params expects key=value pairs, got '" + item + "'");
    out[item.substr(0, eq)] = io::parse_double(item.substr(eq + 1));
    start = end + 1;
  }
  return out;
}

std::vector<double> parse_list(const std::string& text) {
  const Vector v = io::parse_point(text);
  return {v.data(), v.data() + v.size()};
}

HamiltonianSystem system_from(const Options& o) {
  return HamiltonianSystem::from_params(system_from_string(o.system), parse_params(o.params));
}

Box box_from(const Options& o, SystemKind kind) {
  if (o.box.empty()) return default_odd_box(kind);
  const auto b = parse_list(o.box);
  require(b.size() == 4, "--box expects x1_lo,x1_hi,x2_lo,x2_hi");
  return Box::rectangle(b[0], b[1], b[2], b[3]);
}

/// Test-trajectory spec: benchmark defaults overridden by flags.
TrajectorySpec test_spec_from(const Options& o) {
  ExperimentConfig base = benchmark_config(system_from_string(o.system), o.seed);
  TrajectorySpec spec = base.test;
  if (!o.x0.empty()) spec.x0 = io::parse_point(o.x0);
  if (o.dt) spec.grid.h = *o.dt;
  if (o.t_end) spec.grid.t_end = *o.t_end;
  spec.grid.integrator = integrator_from_string(o.integrator);
  return spec;
}

std::string stem_of(const std::string& path) {
  std::string stem = fs::path(path).stem().string();
  for (const std::string suffix : {"_dataset", "_model"}) {
    if (stem.size() > suffix.size() && stem.ends_with(suffix)) stem.resize(stem.size() - suffix.size());
  }
  return stem;
}

/// Files are written under <out>/.staging and moved into <out> on commit.
class OutputStage {
 public:
  OutputStage(fs::path out, std::string command)
      : out_(std::move(out)), staging_(out_ / ".staging"), command_(std::move(command)) {
    fs::remove_all(staging_);
    fs::create_directories(staging_);
  }

  fs::path file(const std::string& name) const { return staging_ / name; }

  void commit() {
    for (const auto& entry : fs::recursive_directory_iterator(staging_)) {
      if (!entry.is_regular_file()) continue;
      const fs::path target = out_ / fs::relative(entry.path(), staging_);
      fs::create_directories(target.parent_path());
      fs::rename(entry.path(), target);
    }
    fs::remove_all(staging_);
  }

  void quarantine() noexcept {
    std::error_code ec;
    const fs::path q = out_ / "quarantine" / command_;
    fs::remove_all(q, ec);
    fs::create_directories(q.parent_path(), ec);
    fs::rename(staging_, q, ec);
    if (!ec) std::cerr << "partial outputs moved to " << q.string() << '\n';
  }

 private:
  fs::path out_;
  fs::path staging_;
  std::string command_;
};

int cmd_generate(const Options& o, OutputStage& stage) {
  const SystemKind kind = system_from_string(o.system);
  ExperimentConfig cfg = benchmark_config(kind, o.seed);
  const HamiltonianSystem system = system_from(o);
  std::vector<Vector> ics = o.ics.empty() ? cfg.initial_conditions : io::parse_point_list(o.ics);
  TimeGrid grid = cfg.sampling;
  if (o.dt) grid.h = *o.dt;
  if (o.t_end) grid.t_end = *o.t_end;
  grid.integrator = integrator_from_string(o.integrator);
  const NoiseSpec noise{o.noise_std.value_or(cfg.noise.std), o.seed};

  const Dataset data = make_dataset(system, ics, grid, noise);
  const std::string name = system.name() + "_seed" + std::to_string(o.seed) + "_dataset.csv";
  io::write_dataset(data, stage.file(name));
  std::cout << "N = " << data.size() << '\n' << "dataset: " << (fs::path(o.out) / name).string() << '\n';
  return 0;
}

int cmd_tune(const Options& o, OutputStage& stage) {
  const Dataset data = io::read_dataset(o.dataset);
  GridSpec grid = GridSpec::defaults();
  if (!o.grid_sigma.empty()) grid.sigmas = parse_list(o.grid_sigma);
  if (!o.grid_lambda.empty()) grid.lambdas = parse_list(o.grid_lambda);
  grid.folds = o.folds;
  grid.seed = o.seed;
  const auto family = kernels::family_from_string(o.kernel);

  const GridResult result = grid_search(data, family, grid);
  const std::string name = stem_of(o.dataset) + "_" + o.kernel + "_cv.csv";
  io::write_score_table(result.table, stage.file(name));
  std::cout << "sigma = " << io::format_double(result.sigma) << '\n'
            << "lambda = " << io::format_double(result.lambda) << '\n'
            << "cv_mse = " << io::format_double(result.score) << '\n'
            << "table: " << (fs::path(o.out) / name).string() << '\n';
  return 0;
}

int cmd_train(const Options& o, OutputStage& stage) {
  require(o.sigma.has_value() && o.lambda.has_value(), "train needs --sigma and --lambda (see 'tune')");
  const Dataset data = io::read_dataset(o.dataset);
  const kernels::KernelSpec spec{kernels::family_from_string(o.kernel), *o.sigma, data.dim()};
  const TrainedModel model = solve_coefficients(data, spec, *o.lambda);
  const std::string name = stem_of(o.dataset) + "_" + o.kernel + "_model.json";
  io::save_model(model, stage.file(name));
  std::cout << "N = " << model.size() << '\n'
            << "max relative residual = " << io::format_double(max_relative_residual(model, data)) << '\n'
            << (model.diagnostics().jittered ? "note: diagonal jitter was applied\n" : "")
            << "model: " << (fs::path(o.out) / name).string() << '\n';
  return 0;
}

int cmd_rollout(const Options& o, OutputStage& stage) {
  const TrainedModel model = io::load_model(o.model);
  const RolloutResult r = rollout_error(system_from(o), model.as_field(), test_spec_from(o));
  const std::string name = stem_of(o.model) + "_rollout.csv";
  io::write_rollout(r, stage.file(name));
  std::cout << "mean error = " << io::format_double(r.mean_error()) << '\n';
  if (r.truncated) std::cout << "truncated: " << r.failure << '\n';
  std::cout << "rollout: " << (fs::path(o.out) / name).string() << '\n';
  return 0;
}

int cmd_evaluate(const Options& o, OutputStage& stage) {
  const TrainedModel model = io::load_model(o.model);
  ExperimentConfig cfg = benchmark_config(system_from_string(o.system), o.seed);
  cfg.system = system_from(o);
  cfg.test = test_spec_from(o);
  cfg.odd_region = box_from(o, cfg.system.kind());
  cfg.odd_samples = o.samples;
  const ModelOutcome m = evaluate_model(model, cfg);

  const std::string stem = stem_of(o.model) + "_";
  const Moments truth = odd_error_stats(cfg.system.as_field(), cfg.odd_region, cfg.odd_samples, cfg.seed);
  io::write_text(stage.file(stem + "table1_odd_error.csv"),
                 "model,mean,variance\ntrue," + io::format_double(truth.mean) + "," + io::format_double(truth.variance) +
                     "\n" + kernels::to_string(model.spec().family) + "," + io::format_double(m.odd_error.mean) + "," +
                     io::format_double(m.odd_error.variance) + "\n");
  if (m.learned_hamiltonian) {
    const Moments real = true_hamiltonian_stats(cfg.system, m.rollout.reference.states);
    io::write_text(stage.file(stem + "table2_hamiltonian.csv"),
                   "hamiltonian,mean,variance,offset\nreal," + io::format_double(real.mean) + "," +
                       io::format_double(real.variance) + ",0\n" + kernels::to_string(model.spec().family) + "," +
                       io::format_double(m.learned_hamiltonian->mean) + "," +
                       io::format_double(m.learned_hamiltonian->variance) + "," +
                       io::format_double(m.learned_hamiltonian->offset.value_or(0.0)) + "\n");
  }
  io::write_rollout(m.rollout, stage.file(stem + "rollout.csv"));

  std::ostringstream summary;
  summary << "model: " << o.model << " (" << kernels::to_string(model.spec().family) << ", sigma "
          << io::format_double(model.spec().sigma) << ", lambda " << io::format_double(model.lambda()) << ")\n"
          << "odd error: mean " << io::format_double(m.odd_error.mean) << " variance "
          << io::format_double(m.odd_error.variance) << '\n'
          << "rollout mean error: " << io::format_double(m.rollout.mean_error()) << '\n'
          << "symplecticity defect: " << io::format_double(m.symplecticity_defect) << '\n';
  if (m.learned_hamiltonian) {
    summary << "learned H: mean " << io::format_double(m.learned_hamiltonian->mean) << " variance "
            << io::format_double(m.learned_hamiltonian->variance) << " offset "
            << io::format_double(m.learned_hamiltonian->offset.value_or(0.0)) << '\n';
  }
  io::write_text(stage.file(stem + "summary.txt"), summary.str());
  std::cout << summary.str();
  return 0;
}

int cmd_field(const Options& o, OutputStage& stage) {
  const SystemKind kind = system_from_string(o.system);
  Box box = box_from(o, kind);
  if (o.box.empty()) box = Box::rectangle(-box.upper(0), box.upper(0), box.lower(1), box.upper(1));
  std::string name;
  std::vector<FieldSample> rows;
  if (!o.model.empty()) {
    const TrainedModel model = io::load_model(o.model);
    rows = field_grid(model.as_field(), box, o.nx, o.ny);
    name = stem_of(o.model) + "_field.csv";
  } else {
    rows = field_grid(system_from(o).as_field(), box, o.nx, o.ny);
    name = o.system + "_true_field.csv";
  }
  io::write_field_grid(rows, stage.file(name));
  std::cout << "rows = " << rows.size() << '\n' << "field: " << (fs::path(o.out) / name).string() << '\n';
  return 0;
}

int cmd_repro(const Options& o, OutputStage& stage) {
  ExperimentConfig cfg = benchmark_config(system_from_string(o.experiment), o.seed);
  if (!o.params.empty()) cfg.system = HamiltonianSystem::from_params(cfg.system.kind(), parse_params(o.params));
  if (o.noise_std) cfg.noise.std = *o.noise_std;
  if (!o.grid_sigma.empty()) cfg.grid.sigmas = parse_list(o.grid_sigma);
  if (!o.grid_lambda.empty()) cfg.grid.lambdas = parse_list(o.grid_lambda);
  cfg.grid.folds = o.folds;
  cfg.sigma = o.sigma;
  cfg.lambda = o.lambda;

  const ExperimentOutcome outcome = run_experiment(cfg);
  const std::string sub = o.experiment + "_seed" + std::to_string(o.seed);
  write_experiment(outcome, stage.file(sub));
  std::cout << summarize(outcome) << "\noutput: " << (fs::path(o.out) / sub).string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learn Hamiltonian vector fields with symplectic and odd matrix-valued kernels"};
  app.set_config("--config", "", "TOML/INI file of option values; command-line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();
  Options o;

  auto add_system = [&](CLI::App* cmd) {
    cmd->add_option("--system", o.system, "oscillator | pendulum")->capture_default_str();
    cmd->add_option("--params", o.params, "system parameters k=v,... (oscillator: m,k; pendulum: m,l,g)");
  };
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", o.out, "output directory")->envname("HAMKERNEL_OUT")->capture_default_str();
    cmd->add_option("--seed", o.seed, "random seed")->capture_default_str();
  };
  auto add_test = [&](CLI::App* cmd) {
    cmd->add_option("--x0", o.x0, "test initial state q,p");
    cmd->add_option("--dt", o.dt, "time step");
    cmd->add_option("--t-end", o.t_end, "time horizon");
    cmd->add_option("--integrator", o.integrator, "rk4 | euler")->capture_default_str();
  };

  auto* gen = app.add_subcommand("generate", "simulate noisy trajectories into a dataset");
  add_system(gen);
  add_common(gen);
  gen->add_option("--ics", o.ics, "initial conditions \"q,p;q,p;...\"");
  gen->add_option("--dt", o.dt, "sampling step");
  gen->add_option("--t-end", o.t_end, "trajectory horizon");
  gen->add_option("--noise-std", o.noise_std, "std of additive Gaussian noise on x and y");
  gen->add_option("--integrator", o.integrator, "rk4 | euler")->capture_default_str();

  auto* tune = app.add_subcommand("tune", "k-fold cross-validation grid search over (sigma, lambda)");
  add_common(tune);
  tune->add_option("--dataset", o.dataset, "dataset CSV")->required();
  tune->add_option("--kernel", o.kernel, "kernel family")->capture_default_str();
  tune->add_option("--folds", o.folds, "number of folds")->capture_default_str();
  tune->add_option("--grid-sigma", o.grid_sigma, "comma-separated ascending widths");
  tune->add_option("--grid-lambda", o.grid_lambda, "comma-separated ascending regularizers");

  auto* train = app.add_subcommand("train", "fit a model with fixed (sigma, lambda)");
  add_common(train);
  train->add_option("--dataset", o.dataset, "dataset CSV")->required();
  train->add_option("--kernel", o.kernel, "kernel family")->capture_default_str();
  train->add_option("--sigma", o.sigma, "kernel width");
  train->add_option("--lambda", o.lambda, "regularization");

  auto* roll = app.add_subcommand("rollout", "integrate a model next to the true system");
  add_system(roll);
  add_common(roll);
  add_test(roll);
  roll->add_option("--model", o.model, "model JSON")->required();

  auto* eval = app.add_subcommand("evaluate", "odd error, Hamiltonian statistics and rollout of a model");
  add_system(eval);
  add_common(eval);
  add_test(eval);
  eval->add_option("--model", o.model, "model JSON")->required();
  eval->add_option("--samples", o.samples, "odd-error sample count")->capture_default_str();
  eval->add_option("--box", o.box, "odd-error sampling box x1_lo,x1_hi,x2_lo,x2_hi");

  auto* field = app.add_subcommand("field", "sample a model (or the true system) on a planar grid");
  add_system(field);
  add_common(field);
  field->add_option("--model", o.model, "model JSON; omit to sample the true system");
  field->add_option("--box", o.box, "x1_lo,x1_hi,x2_lo,x2_hi");
  field->add_option("--nx", o.nx, "grid points along x1")->capture_default_str();
  field->add_option("--ny", o.ny, "grid points along x2")->capture_default_str();

  auto* repro = app.add_subcommand("repro", "run a benchmark end to end: generate, tune, train, evaluate");
  add_common(repro);
  repro->add_option("experiment", o.experiment, "oscillator | pendulum")
      ->required()
      ->check(CLI::IsMember({"oscillator", "pendulum"}));
  repro->add_option("--params", o.params, "system parameters k=v,...");
  repro->add_option("--noise-std", o.noise_std, "noise std");
  repro->add_option("--folds", o.folds, "number of folds")->capture_default_str();
  repro->add_option("--grid-sigma", o.grid_sigma, "comma-separated ascending widths");
  repro->add_option("--grid-lambda", o.grid_lambda, "comma-separated ascending regularizers");
  repro->add_option("--sigma", o.sigma, "fixed kernel width (skips tuning when given with --lambda)");
  repro->add_option("--lambda", o.lambda, "fixed regularization");

  CLI11_PARSE(app, argc, argv);

  const std::map<CLI::App*, int (*)(const Options&, OutputStage&)> commands{
      {gen, cmd_generate}, {tune, cmd_tune},   {train, cmd_train},  {roll, cmd_rollout},
      {eval, cmd_evaluate}, {field, cmd_field}, {repro, cmd_repro}};

  for (const auto& [cmd, run] : commands) {
    if (!cmd->parsed()) continue;
    std::optional<OutputStage> stage;
    try {
      stage.emplace(o.out, cmd->get_name());
      const int rc = run(o, *stage);
      stage->commit();
      return rc;
    } catch (const ContractError& e) {
      std::cerr << "error: " << e.what() << '\n';
      if (stage) stage->quarantine();
      return 2;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      if (stage) stage->quarantine();
      return 1;
    }
  }
  return 0;
}
