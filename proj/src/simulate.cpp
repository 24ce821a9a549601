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

#include "hamkernel/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace hamkernel {

std::string to_string(Integrator integrator) {
  return integrator == Integrator::RK4 ? "rk4" : "euler";
}

Integrator integrator_from_string(std::string_view name) {
  if (name == "rk4") return Integrator::RK4;
  if (name == "euler") return Integrator::Euler;
  throw ContractError("unknown integrator '" + std::string(name) + "' (expected rk4 or euler)");
}

void TimeGrid::validate() const {
  require(std::isfinite(h) && h > 0.0, "time step h must be positive");
  require(std::isfinite(t_end) && t_end >= h * (1.0 - 1e-9), "t_end must be at least one time step");
}

std::size_t TimeGrid::sample_count() const {
  validate();
  const double ratio = t_end / h;
  const double nearest = std::round(ratio);
  const double steps = std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, nearest) ? nearest : std::floor(ratio);
  return static_cast<std::size_t>(steps) + 1;
}

IntegrationError::IntegrationError(std::size_t step, Trajectory partial)
    : std::runtime_error("integration produced a non-finite state at step " + std::to_string(step)),
      step_(step),
      partial_(std::move(partial)) {}

Vector step(const VectorField& field, const Vector& x, double h, Integrator integrator) {
  if (integrator == Integrator::Euler) return x + h * field(x);
  const Vector k1 = field(x);
  const Vector k2 = field(x + 0.5 * h * k1);
  const Vector k3 = field(x + 0.5 * h * k2);
  const Vector k4 = field(x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Trajectory integrate(const VectorField& field, const TrajectorySpec& spec) {
  const std::size_t count = spec.grid.sample_count();
  require(spec.x0.size() > 0, "trajectory needs a nonempty initial state");
  Trajectory traj;
  traj.times.reserve(count);
  traj.states.reserve(count);
  traj.times.push_back(0.0);
  traj.states.push_back(spec.x0);
  if (!spec.x0.allFinite()) throw IntegrationError(0, Trajectory{});
  for (std::size_t k = 1; k < count; ++k) {
    Vector next = step(field, traj.states.back(), spec.grid.h, spec.grid.integrator);
    if (next.size() != spec.x0.size() || !next.allFinite()) throw IntegrationError(k, std::move(traj));
    traj.times.push_back(static_cast<double>(k) * spec.grid.h);
    traj.states.push_back(std::move(next));
  }
  return traj;
}

Dataset make_dataset(const HamiltonianSystem& system, std::span<const Vector> initial_conditions,
                     const TimeGrid& grid, const NoiseSpec& noise) {
  require(!initial_conditions.empty(), "make_dataset needs at least one initial condition");
  require(std::isfinite(noise.std) && noise.std >= 0.0, "noise std must be nonnegative");

  Dataset data;
  data.meta.system = system.name();
  data.meta.params = system.params();
  data.meta.initial_conditions.assign(initial_conditions.begin(), initial_conditions.end());
  data.meta.h = grid.h;
  data.meta.t_end = grid.t_end;
  data.meta.noise_std = noise.std;
  data.meta.seed = noise.seed;

  const VectorField f = system.as_field();
  for (std::size_t traj_index = 0; traj_index < initial_conditions.size(); ++traj_index) {
    const Trajectory traj = integrate(f, TrajectorySpec{initial_conditions[traj_index], grid});
    std::seed_seq seq{static_cast<std::uint32_t>(noise.seed), static_cast<std::uint32_t>(noise.seed >> 32),
                      static_cast<std::uint32_t>(traj_index)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (const Vector& clean : traj.states) {
      Vector x = clean;
      Vector y = system.field(clean);
      if (noise.std > 0.0) {
        for (Eigen::Index i = 0; i < x.size(); ++i) x(i) += noise.std * gauss(rng);
        for (Eigen::Index i = 0; i < y.size(); ++i) y(i) += noise.std * gauss(rng);
      }
      data.points.push_back(std::move(x));
      data.derivatives.push_back(std::move(y));
    }
  }
  return data;
}

double RolloutResult::mean_error() const {
  if (errors.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::accumulate(errors.begin(), errors.end(), 0.0) / static_cast<double>(errors.size());
}

RolloutResult rollout_error(const HamiltonianSystem& truth, const VectorField& learned, const TrajectorySpec& spec) {
  RolloutResult out;
  auto run = [&](const VectorField& f, Trajectory& dst) {
    try {
      dst = integrate(f, spec);
    } catch (const IntegrationError& e) {
      dst = e.partial();
      out.truncated = true;
      if (!out.failure.empty()) out.failure += "; ";
      out.failure += e.what();
    }
  };
  run(truth.as_field(), out.reference);
  run(learned, out.learned);

  const std::size_t count = std::min(out.reference.size(), out.learned.size());
  out.times.assign(out.reference.times.begin(), out.reference.times.begin() + static_cast<std::ptrdiff_t>(count));
  out.errors.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.errors.push_back((out.reference.states[k] - out.learned.states[k]).norm());
  return out;
}

}  // namespace hamkernel
