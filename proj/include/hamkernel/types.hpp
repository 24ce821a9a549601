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

#ifndef HAMKERNEL_TYPES_HPP
#define HAMKERNEL_TYPES_HPP

#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hamkernel {

/// Phase-space state x = [q; p] or its time derivative.
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Autonomous vector field x' = f(x).
using VectorField = std::function<Vector(const Vector&)>;

/// Raised when a caller breaks a documented precondition (bad dimension,
/// nonpositive width, wrong kernel family, ...).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ContractError(message);
}

inline void require_dim(const Vector& v, Eigen::Index dim, const char* what) {
  if (v.size() != dim) {
    throw ContractError(std::string(what) + ": expected dimension " + std::to_string(dim) +
                        ", got " + std::to_string(v.size()));
  }
}

}  // namespace hamkernel

#endif  // HAMKERNEL_TYPES_HPP
