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

#ifndef HAMKERNEL_REGRESSION_HPP
#define HAMKERNEL_REGRESSION_HPP

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hamkernel/kernels.hpp"
#include "hamkernel/types.hpp"

namespace hamkernel {

/// Where a dataset came from. Empty/zero fields mean "unknown".
struct DatasetMeta {
  std::string system;
  std::map<std::string, double> params;
  std::vector<Vector> initial_conditions;
  double h = 0.0;
  double t_end = 0.0;
  double noise_std = 0.0;
  std::uint64_t seed = 0;
};

/// N paired samples (x_i, y_i = x_i') of a vector field.
struct Dataset {
  std::vector<Vector> points;
  std::vector<Vector> derivatives;
  DatasetMeta meta;

  std::size_t size() const { return points.size(); }
  int dim() const { return points.empty() ? 0 : static_cast<int>(points.front().size()); }

  /// Throws ContractError unless N >= 1, both lists have length N and all
  /// vectors share one dimension.
  void validate() const;

  /// Samples at the given indices, in the given order; meta is copied.
  Dataset subset(std::span<const std::size_t> indices) const;
};

/// The symmetric-positive-definite solve failed even after jittering.
class SolveError : public std::runtime_error {
 public:
  SolveError(const std::string& message, double condition_estimate)
      : std::runtime_error(message), condition_estimate_(condition_estimate) {}
  double condition_estimate() const { return condition_estimate_; }

 private:
  double condition_estimate_;
};

struct SolveDiagnostics {
  bool jittered = false;
  double jitter = 0.0;
  /// max_i |sum_j K(x_i, x_j) a_j + N lambda a_i - y_i| / max(1, |y_i|).
  double max_relative_residual = 0.0;
  int refinement_steps = 0;
};

/// f*(x) = sum_i K(x, x_i) a_i. Immutable once built; safe for concurrent
/// evaluation.
class TrainedModel {
 public:
  TrainedModel(kernels::KernelSpec spec, double lambda, std::vector<Vector> centers,
               std::vector<Vector> coeffs, DatasetMeta meta = {}, SolveDiagnostics diagnostics = {});

  const kernels::KernelSpec& spec() const { return spec_; }
  double lambda() const { return lambda_; }
  const std::vector<Vector>& centers() const { return centers_; }
  const std::vector<Vector>& coeffs() const { return coeffs_; }
  const DatasetMeta& meta() const { return meta_; }
  const SolveDiagnostics& diagnostics() const { return diagnostics_; }
  std::size_t size() const { return centers_.size(); }

  Vector field(const Vector& x) const;

  /// Learned Hamiltonian H(x) = -sum_i grad^T k(x, x_i) J^T a_i, defined up to
  /// an additive constant. Only for symplectic families.
  double hamiltonian(const Vector& x) const;

  /// Callable view of field(); the model must outlive the returned object.
  VectorField as_field() const;

 private:
  kernels::KernelSpec spec_;
  double lambda_;
  std::vector<Vector> centers_;
  std::vector<Vector> coeffs_;
  DatasetMeta meta_;
  SolveDiagnostics diagnostics_;
};

/// Nn x Nn block matrix whose (i, j) block is K(x_i, x_j); sample-major.
Matrix assemble_gram(std::span<const Vector> points, const kernels::KernelSpec& spec);
Matrix assemble_gram(const Dataset& dataset, const kernels::KernelSpec& spec);

/// Solves (G + N lambda I) a = y and returns the fitted model.
///
/// Uses a Cholesky factorization; if that fails, the diagonal is jittered
/// once by 1e-10 trace(G) / (N n). The solution is polished by iterative
/// refinement against the unjittered system.
TrainedModel solve_coefficients(const Dataset& dataset, const kernels::KernelSpec& spec, double lambda);

Vector evaluate_field(const TrainedModel& model, const Vector& x);
double evaluate_hamiltonian(const TrainedModel& model, const Vector& x);

/// Representer residuals of the model against the data it was fitted on,
/// max over samples, relative to max(1, |y_i|).
double max_relative_residual(const TrainedModel& model, const Dataset& dataset);

}  // namespace hamkernel

#endif  // HAMKERNEL_REGRESSION_HPP
