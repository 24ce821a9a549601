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

#ifndef HAMKERNEL_SYSTEMS_HPP
#define HAMKERNEL_SYSTEMS_HPP

#include <map>
#include <string>
#include <string_view>

#include "hamkernel/types.hpp"

namespace hamkernel {

enum class SystemKind { HarmonicOscillator, SimplePendulum };

/// "oscillator" or "pendulum".
std::string to_string(SystemKind kind);
SystemKind system_from_string(std::string_view name);

/// One-degree-of-freedom benchmark system with state x = (q, p).
///
///   oscillator: H = p^2 / (2m) + k q^2 / 2                  params m, k
///   pendulum:   H = p^2 / (2 m l^2) + m g l (1 - cos q)     params m, l, g
///
/// The pendulum potential is zero at the hanging rest position.
class HamiltonianSystem {
 public:
  static HamiltonianSystem oscillator(double m, double k);
  static HamiltonianSystem pendulum(double m, double l, double g);

  /// Defaults for the given kind overridden by `params`; unknown keys and
  /// nonpositive values are rejected.
  static HamiltonianSystem from_params(SystemKind kind, const std::map<std::string, double>& params = {});

  SystemKind kind() const { return kind_; }
  std::string name() const { return to_string(kind_); }
  const std::map<std::string, double>& params() const { return params_; }
  double param(const std::string& key) const { return params_.at(key); }

  Vector field(const Vector& x) const;
  double hamiltonian(const Vector& x) const;
  VectorField as_field() const;

 private:
  HamiltonianSystem(SystemKind kind, std::map<std::string, double> params);

  SystemKind kind_;
  std::map<std::string, double> params_;
};

Vector true_field(const HamiltonianSystem& system, const Vector& x);
double true_hamiltonian(const HamiltonianSystem& system, const Vector& x);

/// Frobenius norm of Psi^T J Psi - J, where Psi is the flow Jacobian
/// d phi_t(x0) / d x0 after time t. Psi is taken by central differences
/// (perturbation 1e-6 per coordinate) of RK4 flows with step h.
double symplecticity_defect(const VectorField& field, const Vector& x0, double t, double h);

}  // namespace hamkernel

#endif  // HAMKERNEL_SYSTEMS_HPP
