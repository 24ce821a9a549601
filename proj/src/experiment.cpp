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

#include "hamkernel/experiment.hpp"

#include <numbers>
#include <sstream>

#include "hamkernel/io.hpp"

namespace hamkernel {

using kernels::KernelFamily;

namespace {

Vector point(double q, double p) {
  Vector v(2);
  v << q, p;
  return v;
}

// Published reference values for the two benchmarks.
struct Reference {
  double sep_sigma, sep_lambda, os_sigma, os_lambda;
  double sep_odd_mean, sep_odd_var;
  double true_h_mean, true_h_var, learned_h_mean, learned_h_var;
  double sep_odd_lo, sep_odd_hi;
};

Reference reference_for(SystemKind kind) {
  if (kind == SystemKind::HarmonicOscillator) {
    return {19.5, 1e-4, 12.1, 1e-4, 0.65, 0.08, 1.99, 5.43e-9, -108.54, 6.24e-9, 0.1, 2.0};
  }
  return {12.3, 0.1, 3.0, 1e-4, 7.87, 1.49, 9.81, 2.2e-6, -16.85, 1.34e-6, 2.0, 25.0};
}

std::string file_prefix(const ExperimentOutcome& outcome) {
  return outcome.config.system.name() + "_seed" + std::to_string(outcome.config.seed) + "_";
}

template <typename F>
auto stage(const char* name, F&& body) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

const char* flag(bool ok) { return ok ? "PASS" : "FAIL"; }

}  // namespace

ExperimentConfig benchmark_config(SystemKind kind, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.seed = seed;
  cfg.noise.seed = seed;
  cfg.grid.seed = seed;
  cfg.system = HamiltonianSystem::from_params(kind);
  cfg.odd_region = default_odd_box(kind);
  constexpr double pi = std::numbers::pi;
  if (kind == SystemKind::HarmonicOscillator) {
    cfg.initial_conditions = {point(1.0, 0.0), point(2.25, 0.0), point(3.5, 0.0)};
    cfg.sampling = TimeGrid{0.25, 1.0, Integrator::RK4};
    cfg.noise.std = 0.1;
    cfg.test = TrajectorySpec{point(2.0, 0.0), TimeGrid{0.25, 4.0, Integrator::RK4}};
  } else {
    cfg.initial_conditions = {point(2.0 * pi / 5.0, 0.0), point(4.0 * pi / 5.0, 0.0), point(19.0 * pi / 20.0, -4.0)};
    cfg.sampling = TimeGrid{0.1, 0.7, Integrator::RK4};
    cfg.noise.std = 0.01;
    cfg.test = TrajectorySpec{point(pi / 2.0, 0.0), TimeGrid{0.1, 2.0, Integrator::RK4}};
  }
  return cfg;
}

const ModelOutcome& ExperimentOutcome::model(KernelFamily family) const {
  for (const auto& m : models) {
    if (m.family == family) return m;
  }
  throw ContractError("experiment has no model for kernel " + kernels::to_string(family));
}

ModelOutcome evaluate_model(const TrainedModel& model, const ExperimentConfig& config) {
  const VectorField f = model.as_field();
  ModelOutcome out{model.spec().family, std::nullopt, model, {}, {}, std::nullopt, 0.0};
  out.odd_error = stage("evaluate", [&] { return odd_error_stats(f, config.odd_region, config.odd_samples, config.seed); });
  out.rollout = stage("rollout", [&] { return rollout_error(config.system, f, config.test); });
  if (kernels::is_symplectic(model.spec().family) && !out.rollout.learned.states.empty()) {
    out.learned_hamiltonian = stage("evaluate", [&] {
      return hamiltonian_stats(model, out.rollout.learned.states, &config.system);
    });
  }
  out.symplecticity_defect = stage("evaluate", [&] {
    return symplecticity_defect(f, config.test.x0, config.defect_time, config.defect_step);
  });
  return out;
}

ExperimentOutcome run_experiment(const ExperimentConfig& config) {
  ExperimentOutcome out{config, {}, {}, {}, {}};
  out.dataset = stage("generate", [&] {
    return make_dataset(config.system, config.initial_conditions, config.sampling, config.noise);
  });

  const VectorField truth = config.system.as_field();
  out.true_odd_error = stage("evaluate", [&] {
    return odd_error_stats(truth, config.odd_region, config.odd_samples, config.seed);
  });
  out.true_hamiltonian = stage("evaluate", [&] {
    return true_hamiltonian_stats(config.system, integrate(truth, config.test).states);
  });

  for (KernelFamily family : config.families) {
    std::optional<GridResult> tuning;
    double sigma = 0.0;
    double lambda = 0.0;
    if (config.sigma && config.lambda) {
      sigma = *config.sigma;
      lambda = *config.lambda;
    } else {
      tuning = stage("tune", [&] { return grid_search(out.dataset, family, config.grid); });
      sigma = config.sigma.value_or(tuning->sigma);
      lambda = config.lambda.value_or(tuning->lambda);
    }
    const TrainedModel model = stage("train", [&] {
      return solve_coefficients(out.dataset, kernels::KernelSpec{family, sigma, out.dataset.dim()}, lambda);
    });
    ModelOutcome evaluated = evaluate_model(model, config);
    evaluated.tuning = std::move(tuning);
    out.models.push_back(std::move(evaluated));
  }
  return out;
}

std::vector<std::filesystem::path> write_experiment(const ExperimentOutcome& outcome, const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> written;
  const std::string prefix = file_prefix(outcome);
  auto path = [&](const std::string& name) {
    written.push_back(dir / (prefix + name));
    return written.back();
  };

  io::write_dataset(outcome.dataset, path("dataset.csv"));
  written.push_back(io::meta_path_for(written.back()));

  const Box portrait = Box::rectangle(-outcome.config.odd_region.upper(0), outcome.config.odd_region.upper(0),
                                      outcome.config.odd_region.lower(1), outcome.config.odd_region.upper(1));
  io::write_field_grid(field_grid(outcome.config.system.as_field(), portrait, 41, 41), path("field_true.csv"));

  std::ostringstream table1;
  table1 << "model,mean,variance\n";
  table1 << "true," << io::format_double(outcome.true_odd_error.mean) << ','
         << io::format_double(outcome.true_odd_error.variance) << '\n';

  std::ostringstream table2;
  table2 << "hamiltonian,mean,variance,offset\n";
  table2 << "real," << io::format_double(outcome.true_hamiltonian.mean) << ','
         << io::format_double(outcome.true_hamiltonian.variance) << ",0\n";

  for (const auto& m : outcome.models) {
    const std::string fam = kernels::to_string(m.family);
    if (m.tuning) io::write_score_table(m.tuning->table, path(fam + "_cv.csv"));
    io::save_model(m.model, path(fam + "_model.json"));
    io::write_rollout(m.rollout, path(fam + "_rollout.csv"));
    io::write_field_grid(field_grid(m.model.as_field(), portrait, 41, 41), path(fam + "_field.csv"));
    table1 << fam << ',' << io::format_double(m.odd_error.mean) << ',' << io::format_double(m.odd_error.variance)
           << '\n';
    if (m.learned_hamiltonian) {
      table2 << fam << ',' << io::format_double(m.learned_hamiltonian->mean) << ','
             << io::format_double(m.learned_hamiltonian->variance) << ','
             << io::format_double(m.learned_hamiltonian->offset.value_or(0.0)) << '\n';
    }
  }
  io::write_text(path("table1_odd_error.csv"), table1.str());
  io::write_text(path("table2_hamiltonian.csv"), table2.str());
  io::write_text(path("summary.txt"), summarize(outcome));
  return written;
}

std::string summarize(const ExperimentOutcome& outcome) {
  const auto& cfg = outcome.config;
  const Reference ref = reference_for(cfg.system.kind());
  std::ostringstream s;
  s.precision(6);
  s << "system: " << cfg.system.name() << "  seed: " << cfg.seed << "  N = " << outcome.dataset.size() << '\n';
  s << "noise std: " << cfg.noise.std << "  h: " << cfg.sampling.h << "  t_end: " << cfg.sampling.t_end << "\n\n";

  s << "true field odd error: mean " << outcome.true_odd_error.mean << "  variance "
    << outcome.true_odd_error.variance << "  [" << flag(outcome.true_odd_error.mean <= 1e-12) << "]\n";
  s << "true H along test trajectory: mean " << outcome.true_hamiltonian.mean << " (reference " << ref.true_h_mean
    << ")  variance " << outcome.true_hamiltonian.variance << " (reference " << ref.true_h_var << ")  ["
    << flag(outcome.true_hamiltonian.variance <= 1e-5) << "]\n\n";

  const ModelOutcome* sep = nullptr;
  const ModelOutcome* odd = nullptr;
  for (const auto& m : outcome.models) {
    if (m.family == KernelFamily::SeparableGaussian) sep = &m;
    if (m.family == KernelFamily::OddSymplectic) odd = &m;
    s << kernels::to_string(m.family) << ":\n";
    s << "  sigma " << m.model.spec().sigma << "  lambda " << m.model.lambda();
    if (m.tuning) s << "  (cv mse " << m.tuning->score << ")";
    s << '\n';
    s << "  odd error: mean " << m.odd_error.mean << "  variance " << m.odd_error.variance << '\n';
    s << "  rollout mean error: " << m.rollout.mean_error() << (m.rollout.truncated ? "  (truncated)" : "") << '\n';
    s << "  symplecticity defect at t = " << cfg.defect_time << ": " << m.symplecticity_defect << '\n';
    if (m.learned_hamiltonian) {
      s << "  learned H along own rollout: mean " << m.learned_hamiltonian->mean << " (reference "
        << ref.learned_h_mean << ")  variance " << m.learned_hamiltonian->variance << " (reference "
        << ref.learned_h_var << ")  offset " << m.learned_hamiltonian->offset.value_or(0.0) << '\n';
    }
  }

  s << "\nreference hyperparameters: separable_gaussian sigma " << ref.sep_sigma << " lambda " << ref.sep_lambda
    << "; odd_symplectic sigma " << ref.os_sigma << " lambda " << ref.os_lambda << '\n';
  s << "\nchecks:\n";
  if (odd) {
    s << "  odd_symplectic odd error mean <= 1e-10 and variance <= 1e-20: "
      << flag(odd->odd_error.mean <= 1e-10 && odd->odd_error.variance <= 1e-20) << '\n';
    if (odd->learned_hamiltonian) {
      s << "  odd_symplectic learned H variance <= 1e-5: " << flag(odd->learned_hamiltonian->variance <= 1e-5) << '\n';
    }
  }
  if (sep) {
    s << "  separable_gaussian odd error mean in [" << ref.sep_odd_lo << ", " << ref.sep_odd_hi << "] (reference "
      << ref.sep_odd_mean << "): " << flag(sep->odd_error.mean >= ref.sep_odd_lo && sep->odd_error.mean <= ref.sep_odd_hi)
      << '\n';
  }
  if (sep && odd) {
    const double ratio = sep->rollout.mean_error() / odd->rollout.mean_error();
    s << "  odd_symplectic rollout mean error < separable_gaussian: "
      << flag(odd->rollout.mean_error() < sep->rollout.mean_error()) << "  (ratio " << ratio << ")\n";
    s << "  odd_symplectic symplecticity defect < separable_gaussian: "
      << flag(odd->symplecticity_defect < sep->symplecticity_defect) << '\n';
  }
  return s.str();
}

}  // namespace hamkernel
