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

#ifndef HAMKERNEL_SIMULATE_HPP
#define HAMKERNEL_SIMULATE_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hamkernel/regression.hpp"
#include "hamkernel/systems.hpp"
#include "hamkernel/types.hpp"

namespace hamkernel {

enum class Integrator { RK4, Euler };

std::string to_string(Integrator integrator);
Integrator integrator_from_string(std::string_view name);

/// Fixed-step time grid t_k = k h, k = 0 .. floor(t_end / h).
struct TimeGrid {
  double h = 0.1;
  double t_end = 1.0;
  Integrator integrator = Integrator::RK4;

  void validate() const;
  /// floor(t_end / h) + 1, with t_end / h rounded to the nearest integer
  /// when it is within 1e-9 of one (0.7 / 0.1 gives 8 samples, not 7).
  std::size_t sample_count() const;
};

struct TrajectorySpec {
  Vector x0;
  TimeGrid grid;
};

struct NoiseSpec {
  double std = 0.0;
  std::uint64_t seed = 0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> states;

  std::size_t size() const { return times.size(); }
};

/// A state became non-finite. Carries the trajectory up to the last finite
/// sample.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(std::size_t step, Trajectory partial);
  std::size_t step() const { return step_; }
  const Trajectory& partial() const { return partial_; }

 private:
  std::size_t step_;
  Trajectory partial_;
};

/// One explicit step of the chosen scheme.
Vector step(const VectorField& field, const Vector& x, double h, Integrator integrator);

/// Fixed-step trajectory including the t = 0 sample.
Trajectory integrate(const VectorField& field, const TrajectorySpec& spec);

/// Integrates the true system from each initial condition, samples
/// y = f(x) at every clean trajectory point, then adds i.i.d. N(0, std^2)
/// noise to both x and y. Trajectory i draws from its own stream seeded by
/// (noise.seed, i).
Dataset make_dataset(const HamiltonianSystem& system, std::span<const Vector> initial_conditions,
                     const TimeGrid& grid, const NoiseSpec& noise);

struct RolloutResult {
  Trajectory reference;
  Trajectory learned;
  std::vector<double> times;
  /// |x_true(t) - x_learned(t)| at each time.
  std::vector<double> errors;
  bool truncated = false;
  std::string failure;

  double mean_error() const;
};

/// Integrates the true system and the learned field from the same x0 with
/// the same scheme and step. If either diverges the series stops at the
/// last sample where both are finite.
RolloutResult rollout_error(const HamiltonianSystem& truth, const VectorField& learned, const TrajectorySpec& spec);

}  // namespace hamkernel

#endif  // HAMKERNEL_SIMULATE_HPP
