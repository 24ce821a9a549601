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

#include "hamkernel/evaluate.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace hamkernel {

void Box::validate() const {
  require(lower.size() > 0 && lower.size() == upper.size(), "box bounds must be nonempty and of equal dimension");
  require(lower.allFinite() && upper.allFinite(), "box bounds must be finite");
  require((lower.array() <= upper.array()).all(), "box lower bound exceeds upper bound");
}

Box Box::rectangle(double x1_lo, double x1_hi, double x2_lo, double x2_hi) {
  Box box{Vector(2), Vector(2)};
  box.lower << x1_lo, x2_lo;
  box.upper << x1_hi, x2_hi;
  box.validate();
  return box;
}

Box default_odd_box(SystemKind kind) {
  if (kind == SystemKind::HarmonicOscillator) return Box::rectangle(0.0, 4.0, -4.0, 4.0);
  return Box::rectangle(0.0, std::numbers::pi, -8.0, 8.0);
}

Moments moments(std::span<const double> values) {
  require(!values.empty(), "moments of an empty sample");
  Moments m;
  for (double v : values) m.mean += v;
  m.mean /= static_cast<double>(values.size());
  for (double v : values) m.variance += (v - m.mean) * (v - m.mean);
  m.variance /= static_cast<double>(values.size());
  return m;
}

Moments odd_error_stats(const VectorField& field, const Box& region, std::size_t samples, std::uint64_t seed) {
  region.validate();
  require(samples >= 1, "odd_error_stats needs at least one sample");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Vector width = region.upper - region.lower;

  std::vector<double> errors;
  errors.reserve(samples);
  Vector x(region.lower.size());
  for (std::size_t s = 0; s < samples; ++s) {
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = region.lower(i) + width(i) * unit(rng);
    errors.push_back((field(x) + field(-x)).norm());
  }
  return moments(errors);
}

HamiltonianStats hamiltonian_stats(const TrainedModel& model, std::span<const Vector> trajectory,
                                   const HamiltonianSystem* truth) {
  require(kernels::is_symplectic(model.spec().family), "hamiltonian_stats requires a symplectic-family model");
  require(!trajectory.empty(), "hamiltonian_stats needs a nonempty trajectory");
  std::vector<double> learned;
  learned.reserve(trajectory.size());
  for (const Vector& x : trajectory) learned.push_back(model.hamiltonian(x));
  const Moments m = moments(learned);

  HamiltonianStats out{m.mean, m.variance, std::nullopt};
  if (truth != nullptr) out.offset = m.mean - true_hamiltonian_stats(*truth, trajectory).mean;
  return out;
}

Moments true_hamiltonian_stats(const HamiltonianSystem& system, std::span<const Vector> trajectory) {
  std::vector<double> values;
  values.reserve(trajectory.size());
  for (const Vector& x : trajectory) values.push_back(system.hamiltonian(x));
  return moments(values);
}

std::vector<FieldSample> field_grid(const VectorField& field, const Box& box, std::size_t nx, std::size_t ny) {
  box.validate();
  require(box.lower.size() == 2, "field_grid supports planar (dim = 2) fields only");
  require(nx >= 2 && ny >= 2, "field_grid needs nx, ny >= 2");
  std::vector<FieldSample> rows;
  rows.reserve(nx * ny);
  Vector x(2);
  for (std::size_t iy = 0; iy < ny; ++iy) {
    x(1) = box.lower(1) + (box.upper(1) - box.lower(1)) * static_cast<double>(iy) / static_cast<double>(ny - 1);
    for (std::size_t ix = 0; ix < nx; ++ix) {
      x(0) = box.lower(0) + (box.upper(0) - box.lower(0)) * static_cast<double>(ix) / static_cast<double>(nx - 1);
      const Vector f = field(x);
      require(f.size() == 2, "field_grid: field returned a non-planar vector");
      rows.push_back({x(0), x(1), f(0), f(1)});
    }
  }
  return rows;
}

}  // namespace hamkernel
