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

#include "hamkernel/kernels.hpp"

#include <cmath>

namespace hamkernel::kernels {

namespace {

void check_pair(const Vector& x, const Vector& z, const KernelSpec& spec) {
  spec.validate();
  require_dim(x, spec.dim, "kernel argument x");
  require_dim(z, spec.dim, "kernel argument z");
}

void check_sigma(double sigma) {
  require(sigma > 0.0 && std::isfinite(sigma), "kernel width sigma must be positive");
}

// J A J^T written out blockwise. With A = [[A11, A12], [A21, A22]] this is
// [[A22, -A21], [-A12, A11]]; only signs and positions change, so the result
// is exact.
Matrix conjugate_by_j(const Matrix& a) {
  const Eigen::Index m = a.rows() / 2;
  Matrix out(a.rows(), a.cols());
  out.topLeftCorner(m, m) = a.bottomRightCorner(m, m);
  out.topRightCorner(m, m) = -a.bottomLeftCorner(m, m);
  out.bottomLeftCorner(m, m) = -a.topRightCorner(m, m);
  out.bottomRightCorner(m, m) = a.topLeftCorner(m, m);
  return out;
}

}  // namespace

std::string to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::SeparableGaussian: return "separable_gaussian";
    case KernelFamily::CurlFree: return "curl_free";
    case KernelFamily::OddCurlFree: return "odd_curl_free";
    case KernelFamily::Symplectic: return "symplectic";
    case KernelFamily::OddSymplectic: return "odd_symplectic";
  }
  throw ContractError("unknown kernel family");
}

KernelFamily family_from_string(std::string_view name) {
  for (auto f : {KernelFamily::SeparableGaussian, KernelFamily::CurlFree, KernelFamily::OddCurlFree,
                 KernelFamily::Symplectic, KernelFamily::OddSymplectic}) {
    if (name == to_string(f)) return f;
  }
  throw ContractError("unknown kernel family '" + std::string(name) +
                      "' (expected separable_gaussian, curl_free, odd_curl_free, symplectic or "
                      "odd_symplectic)");
}

bool is_symplectic(KernelFamily family) {
  return family == KernelFamily::Symplectic || family == KernelFamily::OddSymplectic;
}

bool is_odd(KernelFamily family) {
  return family == KernelFamily::OddCurlFree || family == KernelFamily::OddSymplectic;
}

void KernelSpec::validate() const {
  check_sigma(sigma);
  require(dim >= 2 && dim % 2 == 0, "kernel dimension must be even and >= 2, got " + std::to_string(dim));
}

Matrix symplectic_matrix(int dim) {
  require(dim >= 2 && dim % 2 == 0, "symplectic matrix needs an even dimension");
  const int m = dim / 2;
  Matrix j = Matrix::Zero(dim, dim);
  j.topRightCorner(m, m).setIdentity();
  j.bottomLeftCorner(m, m) = -Matrix::Identity(m, m);
  return j;
}

double gaussian_scalar(const Vector& x, const Vector& z, double sigma) {
  check_sigma(sigma);
  require(x.size() == z.size(), "gaussian_scalar: dimension mismatch");
  return std::exp(-(x - z).squaredNorm() / (2.0 * sigma * sigma));
}

double gaussian_odd_scalar(const Vector& x, const Vector& z, double sigma) {
  check_sigma(sigma);
  require(x.size() == z.size(), "gaussian_odd_scalar: dimension mismatch");
  const double s2 = 2.0 * sigma * sigma;
  return 0.5 * (std::exp(-(x - z).squaredNorm() / s2) - std::exp(-(x + z).squaredNorm() / s2));
}

Vector gaussian_gradient(const Vector& r, double sigma) {
  check_sigma(sigma);
  const double s2 = sigma * sigma;
  return -(r / s2) * std::exp(-r.squaredNorm() / (2.0 * s2));
}

Vector gaussian_odd_gradient(const Vector& x, const Vector& z, double sigma) {
  require(x.size() == z.size(), "gaussian_odd_gradient: dimension mismatch");
  return 0.5 * (gaussian_gradient(x - z, sigma) - gaussian_gradient(x + z, sigma));
}

Matrix curl_free_at(const Vector& r, double sigma) {
  const double s2 = sigma * sigma;
  const double g = std::exp(-r.squaredNorm() / (2.0 * s2));
  Matrix out = -(r * r.transpose()) / s2;
  out.diagonal().array() += 1.0;
  return (g / s2) * out;
}

Matrix separable_gaussian(const Vector& x, const Vector& z, const KernelSpec& spec) {
  check_pair(x, z, spec);
  return gaussian_scalar(x, z, spec.sigma) * Matrix::Identity(spec.dim, spec.dim);
}

Matrix curl_free(const Vector& x, const Vector& z, const KernelSpec& spec) {
  check_pair(x, z, spec);
  return curl_free_at(x - z, spec.sigma);
}

Matrix symplectic(const Vector& x, const Vector& z, const KernelSpec& spec) {
  return conjugate_by_j(curl_free(x, z, spec));
}

Matrix odd_curl_free(const Vector& x, const Vector& z, const KernelSpec& spec) {
  check_pair(x, z, spec);
  // curl_free(-x, z) = G(-x - z) = G(x + z), G being even.
  return 0.5 * (curl_free_at(x - z, spec.sigma) - curl_free_at(x + z, spec.sigma));
}

Matrix odd_symplectic(const Vector& x, const Vector& z, const KernelSpec& spec) {
  return conjugate_by_j(odd_curl_free(x, z, spec));
}

Matrix evaluate(const Vector& x, const Vector& z, const KernelSpec& spec) {
  switch (spec.family) {
    case KernelFamily::SeparableGaussian: return separable_gaussian(x, z, spec);
    case KernelFamily::CurlFree: return curl_free(x, z, spec);
    case KernelFamily::OddCurlFree: return odd_curl_free(x, z, spec);
    case KernelFamily::Symplectic: return symplectic(x, z, spec);
    case KernelFamily::OddSymplectic: return odd_symplectic(x, z, spec);
  }
  throw ContractError("unknown kernel family");
}

}  // namespace hamkernel::kernels
