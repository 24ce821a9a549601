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

#ifndef HAMKERNEL_EVALUATE_HPP
#define HAMKERNEL_EVALUATE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hamkernel/regression.hpp"
#include "hamkernel/systems.hpp"
#include "hamkernel/types.hpp"

namespace hamkernel {

/// Axis-aligned box lower <= x <= upper.
struct Box {
  Vector lower;
  Vector upper;

  void validate() const;
  static Box rectangle(double x1_lo, double x1_hi, double x2_lo, double x2_hi);
};

/// Right half of the phase-portrait window: oscillator [0,4]x[-4,4],
/// pendulum [0,pi]x[-8,8].
Box default_odd_box(SystemKind kind);

struct Moments {
  double mean = 0.0;
  /// Population variance (divides by the sample count).
  double variance = 0.0;
};

Moments moments(std::span<const double> values);

/// Mean and variance of e_odd = |f(x) + f(-x)| over `samples` points drawn
/// uniformly from `region`.
Moments odd_error_stats(const VectorField& field, const Box& region, std::size_t samples, std::uint64_t seed);

struct HamiltonianStats {
  double mean = 0.0;
  double variance = 0.0;
  /// mean(H_learned) - mean(H_true) over the same points, when a true system
  /// is supplied.
  std::optional<double> offset;
};

HamiltonianStats hamiltonian_stats(const TrainedModel& model, std::span<const Vector> trajectory,
                                   const HamiltonianSystem* truth = nullptr);

/// Stats of the true Hamiltonian along a trajectory.
Moments true_hamiltonian_stats(const HamiltonianSystem& system, std::span<const Vector> trajectory);

struct FieldSample {
  double x1, x2, f1, f2;
};

/// Samples a planar field on an nx x ny lattice spanning `box`, x2-major
/// (rows of constant x2, x1 varying fastest).
std::vector<FieldSample> field_grid(const VectorField& field, const Box& box, std::size_t nx, std::size_t ny);

}  // namespace hamkernel

#endif  // HAMKERNEL_EVALUATE_HPP
