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

#ifndef HAMKERNEL_EXPERIMENT_HPP
#define HAMKERNEL_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hamkernel/evaluate.hpp"
#include "hamkernel/kernels.hpp"
#include "hamkernel/regression.hpp"
#include "hamkernel/simulate.hpp"
#include "hamkernel/systems.hpp"
#include "hamkernel/tune.hpp"

namespace hamkernel {

/// Full recipe: data generation, tuning (or fixed hyperparameters),
/// training and evaluation.
struct ExperimentConfig {
  HamiltonianSystem system = HamiltonianSystem::oscillator(0.5, 1.0);
  std::vector<Vector> initial_conditions;
  TimeGrid sampling;
  NoiseSpec noise;
  GridSpec grid = GridSpec::defaults();
  /// When both are set the grid search is skipped.
  std::optional<double> sigma;
  std::optional<double> lambda;
  std::vector<kernels::KernelFamily> families{kernels::KernelFamily::SeparableGaussian,
                                              kernels::KernelFamily::OddSymplectic};
  TrajectorySpec test;
  Box odd_region;
  std::size_t odd_samples = 10000;
  std::uint64_t seed = 0;
  /// Flow time and step for the symplecticity defect.
  double defect_time = 1.0;
  double defect_step = 1e-3;
};

/// The two benchmark recipes (three noisy trajectories each, plus a held-out
/// test trajectory). All randomness derives from `seed`.
ExperimentConfig benchmark_config(SystemKind kind, std::uint64_t seed = 0);

struct ModelOutcome {
  kernels::KernelFamily family;
  std::optional<GridResult> tuning;
  TrainedModel model;
  Moments odd_error;
  RolloutResult rollout;
  /// Learned Hamiltonian along the learned model's own rollout.
  std::optional<HamiltonianStats> learned_hamiltonian;
  double symplecticity_defect = 0.0;
};

struct ExperimentOutcome {
  ExperimentConfig config;
  Dataset dataset;
  Moments true_odd_error;
  /// True Hamiltonian along the RK4 reference test trajectory.
  Moments true_hamiltonian;
  std::vector<ModelOutcome> models;

  const ModelOutcome& model(kernels::KernelFamily family) const;
};

/// A pipeline stage failed; what() names the stage.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& reason)
      : std::runtime_error("stage '" + stage + "' failed: " + reason), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

ExperimentOutcome run_experiment(const ExperimentConfig& config);

/// Evaluation of one already-trained model against a true system.
ModelOutcome evaluate_model(const TrainedModel& model, const ExperimentConfig& config);

/// Writes dataset, tuning tables, models, Table-I/II style CSVs, rollouts,
/// field grids and summary.txt into `dir`. File names start with
/// "<system>_seed<seed>_". Returns every path written.
std::vector<std::filesystem::path> write_experiment(const ExperimentOutcome& outcome, const std::filesystem::path& dir);

/// Human-readable comparison against the published reference values.
std::string summarize(const ExperimentOutcome& outcome);

}  // namespace hamkernel

#endif  // HAMKERNEL_EXPERIMENT_HPP
