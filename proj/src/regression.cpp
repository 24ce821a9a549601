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

#include "hamkernel/regression.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hamkernel {

using kernels::KernelSpec;

namespace {

constexpr double kResidualTolerance = 1e-8;
constexpr int kMaxRefinementSteps = 3;

Vector stack(std::span<const Vector> parts, int dim) {
  Vector out(static_cast<Eigen::Index>(parts.size()) * dim);
  for (std::size_t i = 0; i < parts.size(); ++i) out.segment(static_cast<Eigen::Index>(i) * dim, dim) = parts[i];
  return out;
}

double relative_residual(const Vector& residual, const Vector& rhs, int dim) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < residual.size() / dim; ++i) {
    const double scale = std::max(1.0, rhs.segment(i * dim, dim).norm());
    worst = std::max(worst, residual.segment(i * dim, dim).norm() / scale);
  }
  return worst;
}

double condition_estimate(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a, Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  const double lo = ev.minCoeff();
  return lo > 0.0 ? ev.maxCoeff() / lo : std::numeric_limits<double>::infinity();
}

}  // namespace

void Dataset::validate() const {
  require(!points.empty(), "dataset must contain at least one sample");
  require(points.size() == derivatives.size(), "dataset points and derivatives differ in length");
  const int n = dim();
  require(n > 0, "dataset vectors must be nonempty");
  for (std::size_t i = 0; i < points.size(); ++i) {
    require_dim(points[i], n, "dataset point");
    require_dim(derivatives[i], n, "dataset derivative");
  }
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Dataset out;
  out.meta = meta;
  out.points.reserve(indices.size());
  out.derivatives.reserve(indices.size());
  for (auto i : indices) {
    require(i < size(), "dataset subset index out of range");
    out.points.push_back(points[i]);
    out.derivatives.push_back(derivatives[i]);
  }
  return out;
}

TrainedModel::TrainedModel(KernelSpec spec, double lambda, std::vector<Vector> centers,
                           std::vector<Vector> coeffs, DatasetMeta meta, SolveDiagnostics diagnostics)
    : spec_(spec),
      lambda_(lambda),
      centers_(std::move(centers)),
      coeffs_(std::move(coeffs)),
      meta_(std::move(meta)),
      diagnostics_(diagnostics) {
  spec_.validate();
  require(lambda_ > 0.0, "regularization lambda must be positive");
  require(centers_.size() == coeffs_.size(), "model centers and coefficients differ in length");
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    require_dim(centers_[i], spec_.dim, "model center");
    require_dim(coeffs_[i], spec_.dim, "model coefficient");
  }
}

Vector TrainedModel::field(const Vector& x) const {
  require_dim(x, spec_.dim, "evaluate_field");
  Vector out = Vector::Zero(spec_.dim);
  for (std::size_t i = 0; i < centers_.size(); ++i) out.noalias() += kernels::evaluate(x, centers_[i], spec_) * coeffs_[i];
  return out;
}

double TrainedModel::hamiltonian(const Vector& x) const {
  require(kernels::is_symplectic(spec_.family),
          "learned Hamiltonian requires a symplectic kernel, model uses " + kernels::to_string(spec_.family));
  require_dim(x, spec_.dim, "evaluate_hamiltonian");
  const Matrix jt = kernels::symplectic_matrix(spec_.dim).transpose();
  const bool odd = spec_.family == kernels::KernelFamily::OddSymplectic;
  double h = 0.0;
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    const Vector grad = odd ? kernels::gaussian_odd_gradient(x, centers_[i], spec_.sigma)
                            : kernels::gaussian_gradient(x - centers_[i], spec_.sigma);
    h -= grad.dot(jt * coeffs_[i]);
  }
  return h;
}

VectorField TrainedModel::as_field() const {
  return [this](const Vector& x) { return field(x); };
}

Matrix assemble_gram(std::span<const Vector> points, const KernelSpec& spec) {
  spec.validate();
  require(!points.empty(), "Gram assembly needs at least one point");
  const int n = spec.dim;
  const auto count = static_cast<Eigen::Index>(points.size());
  Matrix gram(count * n, count * n);
  for (Eigen::Index i = 0; i < count; ++i) {
    require_dim(points[i], n, "Gram point");
    gram.block(i * n, i * n, n, n) = kernels::evaluate(points[i], points[i], spec);
    for (Eigen::Index j = 0; j < i; ++j) {
      const Matrix block = kernels::evaluate(points[i], points[j], spec);
      gram.block(i * n, j * n, n, n) = block;
      gram.block(j * n, i * n, n, n) = block.transpose();
    }
  }
  return gram;
}

Matrix assemble_gram(const Dataset& dataset, const KernelSpec& spec) {
  dataset.validate();
  return assemble_gram(std::span<const Vector>(dataset.points), spec);
}

TrainedModel solve_coefficients(const Dataset& dataset, const KernelSpec& spec, double lambda) {
  require(lambda > 0.0 && std::isfinite(lambda), "regularization lambda must be positive");
  dataset.validate();
  require(dataset.dim() == spec.dim, "dataset dimension does not match kernel dimension");

  const int n = spec.dim;
  const auto count = static_cast<Eigen::Index>(dataset.size());
  const Matrix gram = assemble_gram(dataset, spec);
  Matrix system = gram;
  system.diagonal().array() += static_cast<double>(count) * lambda;
  const Vector rhs = stack(dataset.derivatives, n);

  SolveDiagnostics diag;
  Eigen::LLT<Matrix> llt(system);
  if (llt.info() != Eigen::Success) {
    diag.jittered = true;
    diag.jitter = 1e-10 * gram.trace() / static_cast<double>(count * n);
    Matrix jittered = system;
    jittered.diagonal().array() += diag.jitter;
    llt.compute(jittered);
    if (llt.info() != Eigen::Success) {
      const double cond = condition_estimate(system);
      std::ostringstream msg;
      msg << "Cholesky factorization of the regularized Gram matrix failed after jitter " << diag.jitter
          << " (condition estimate " << cond << ")";
      throw SolveError(msg.str(), cond);
    }
  }

  Vector a = llt.solve(rhs);
  Vector residual = system * a - rhs;
  diag.max_relative_residual = relative_residual(residual, rhs, n);
  while (diag.max_relative_residual > 0.1 * kResidualTolerance && diag.refinement_steps < kMaxRefinementSteps) {
    a -= llt.solve(residual);
    residual = system * a - rhs;
    diag.max_relative_residual = relative_residual(residual, rhs, n);
    ++diag.refinement_steps;
  }
  if (!a.allFinite() || diag.max_relative_residual > kResidualTolerance) {
    const double cond = condition_estimate(system);
    std::ostringstream msg;
    msg << "regularized solve did not reach the residual tolerance (residual " << diag.max_relative_residual
        << ", condition estimate " << cond << ")";
    throw SolveError(msg.str(), cond);
  }

  std::vector<Vector> coeffs;
  coeffs.reserve(dataset.size());
  for (Eigen::Index i = 0; i < count; ++i) coeffs.emplace_back(a.segment(i * n, n));
  return TrainedModel(spec, lambda, dataset.points, std::move(coeffs), dataset.meta, diag);
}

Vector evaluate_field(const TrainedModel& model, const Vector& x) { return model.field(x); }

double evaluate_hamiltonian(const TrainedModel& model, const Vector& x) { return model.hamiltonian(x); }

double max_relative_residual(const TrainedModel& model, const Dataset& dataset) {
  dataset.validate();
  require(dataset.size() == model.size(), "residual check needs the training dataset");
  const double reg = static_cast<double>(dataset.size()) * model.lambda();
  double worst = 0.0;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const Vector r = model.field(dataset.points[i]) + reg * model.coeffs()[i] - dataset.derivatives[i];
    worst = std::max(worst, r.norm() / std::max(1.0, dataset.derivatives[i].norm()));
  }
  return worst;
}

}  // namespace hamkernel
