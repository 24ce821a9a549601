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

#include "hamkernel/systems.hpp"

#include <cmath>

#include "hamkernel/kernels.hpp"
#include "hamkernel/simulate.hpp"

namespace hamkernel {

std::string to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::HarmonicOscillator: return "oscillator";
    case SystemKind::SimplePendulum: return "pendulum";
  }
  throw ContractError("unknown system kind");
}

SystemKind system_from_string(std::string_view name) {
  if (name == "oscillator") return SystemKind::HarmonicOscillator;
  if (name == "pendulum") return SystemKind::SimplePendulum;
  throw ContractError("unknown system '" + std::string(name) + "' (expected oscillator or pendulum)");
}

HamiltonianSystem::HamiltonianSystem(SystemKind kind, std::map<std::string, double> params)
    : kind_(kind), params_(std::move(params)) {
  for (const auto& [key, value] : params_) {
    require(std::isfinite(value) && value > 0.0, "system parameter '" + key + "' must be strictly positive");
  }
}

HamiltonianSystem HamiltonianSystem::oscillator(double m, double k) {
  return HamiltonianSystem(SystemKind::HarmonicOscillator, {{"m", m}, {"k", k}});
}

HamiltonianSystem HamiltonianSystem::pendulum(double m, double l, double g) {
  return HamiltonianSystem(SystemKind::SimplePendulum, {{"m", m}, {"l", l}, {"g", g}});
}

HamiltonianSystem HamiltonianSystem::from_params(SystemKind kind, const std::map<std::string, double>& params) {
  std::map<std::string, double> merged = kind == SystemKind::HarmonicOscillator
                                             ? std::map<std::string, double>{{"m", 0.5}, {"k", 1.0}}
                                             : std::map<std::string, double>{{"m", 0.5}, {"l", 1.0}, {"g", 9.81}};
  for (const auto& [key, value] : params) {
    auto it = merged.find(key);
    require(it != merged.end(), "unknown parameter '" + key + "' for system " + to_string(kind));
    it->second = value;
  }
  return HamiltonianSystem(kind, std::move(merged));
}

Vector HamiltonianSystem::field(const Vector& x) const {
  require_dim(x, 2, "system state");
  Vector dx(2);
  const double m = params_.at("m");
  if (kind_ == SystemKind::HarmonicOscillator) {
    dx << x(1) / m, -params_.at("k") * x(0);
  } else {
    const double l = params_.at("l");
    dx << x(1) / (m * l * l), -m * params_.at("g") * l * std::sin(x(0));
  }
  return dx;
}

double HamiltonianSystem::hamiltonian(const Vector& x) const {
  require_dim(x, 2, "system state");
  const double m = params_.at("m");
  if (kind_ == SystemKind::HarmonicOscillator) {
    return 0.5 * x(1) * x(1) / m + 0.5 * params_.at("k") * x(0) * x(0);
  }
  const double l = params_.at("l");
  return x(1) * x(1) / (2.0 * m * l * l) + m * params_.at("g") * l * (1.0 - std::cos(x(0)));
}

VectorField HamiltonianSystem::as_field() const {
  return [system = *this](const Vector& x) { return system.field(x); };
}

Vector true_field(const HamiltonianSystem& system, const Vector& x) { return system.field(x); }

double true_hamiltonian(const HamiltonianSystem& system, const Vector& x) { return system.hamiltonian(x); }

double symplecticity_defect(const VectorField& field, const Vector& x0, double t, double h) {
  require(t > 0.0 && h > 0.0, "symplecticity_defect needs t > 0 and h > 0");
  const auto n = x0.size();
  require(n >= 2 && n % 2 == 0, "symplecticity_defect needs an even-dimensional state");
  constexpr double kPerturbation = 1e-6;

  auto flow = [&](const Vector& start) {
    TrajectorySpec spec{start, TimeGrid{h, t, Integrator::RK4}};
    return integrate(field, spec).states.back();
  };

  Matrix psi(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Vector plus = x0;
    Vector minus = x0;
    plus(k) += kPerturbation;
    minus(k) -= kPerturbation;
    // Divide by the perturbation actually representable in floating point.
    psi.col(k) = (flow(plus) - flow(minus)) / (plus(k) - minus(k));
  }
  const Matrix j = kernels::symplectic_matrix(static_cast<int>(n));
  return (psi.transpose() * j * psi - j).norm();
}

}  // namespace hamkernel
