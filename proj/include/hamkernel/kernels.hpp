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

#ifndef HAMKERNEL_KERNELS_HPP
#define HAMKERNEL_KERNELS_HPP

#include <string>
#include <string_view>

#include "hamkernel/types.hpp"

/// Scalar and matrix-valued Gaussian-based reproducing kernels.
///
/// Every matrix kernel K(x, z) is n x n with n = 2m the phase-space
/// dimension. The curl-free kernel is -grad grad^T of the scalar Gaussian;
/// the symplectic kernels conjugate it with J = [[0, I], [-I, 0]] so that
/// every function in the induced RKHS is a Hamiltonian vector field. The odd
/// variants antisymmetrize in the first argument, making every function in
/// the RKHS odd.
///
/// All functions are pure and safe to call concurrently.
namespace hamkernel::kernels {

enum class KernelFamily { SeparableGaussian, CurlFree, OddCurlFree, Symplectic, OddSymplectic };

/// Lowercase identifier used in model files and on the command line,
/// e.g. "odd_symplectic".
std::string to_string(KernelFamily family);
KernelFamily family_from_string(std::string_view name);

/// True for the families whose RKHS consists of Hamiltonian fields.
bool is_symplectic(KernelFamily family);
/// True for the families whose RKHS consists of odd fields.
bool is_odd(KernelFamily family);

struct KernelSpec {
  KernelFamily family = KernelFamily::SeparableGaussian;
  double sigma = 1.0;
  int dim = 2;

  /// Throws ContractError unless sigma > 0 and dim is even and >= 2.
  void validate() const;
};

/// Canonical symplectic matrix J = [[0, I], [-I, 0]] of size dim x dim.
Matrix symplectic_matrix(int dim);

/// exp(-|x - z|^2 / (2 sigma^2)).
double gaussian_scalar(const Vector& x, const Vector& z, double sigma);

/// (k(x, z) - k(-x, z)) / 2 for the scalar Gaussian k.
double gaussian_odd_scalar(const Vector& x, const Vector& z, double sigma);

/// Gradient of g(r) = exp(-|r|^2 / (2 sigma^2)), i.e. -(r / sigma^2) g(r).
Vector gaussian_gradient(const Vector& r, double sigma);

/// Gradient in x of gaussian_odd_scalar(x, z, sigma).
Vector gaussian_odd_gradient(const Vector& x, const Vector& z, double sigma);

/// -grad grad^T g evaluated at r = x - z:
/// (1/sigma^2) exp(-|r|^2 / 2sigma^2) (I - r r^T / sigma^2).
Matrix curl_free_at(const Vector& r, double sigma);

Matrix separable_gaussian(const Vector& x, const Vector& z, const KernelSpec& spec);
Matrix curl_free(const Vector& x, const Vector& z, const KernelSpec& spec);
/// J curl_free(x, z) J^T.
Matrix symplectic(const Vector& x, const Vector& z, const KernelSpec& spec);
/// (curl_free(x, z) - curl_free(-x, z)) / 2.
Matrix odd_curl_free(const Vector& x, const Vector& z, const KernelSpec& spec);
/// J odd_curl_free(x, z) J^T.
Matrix odd_symplectic(const Vector& x, const Vector& z, const KernelSpec& spec);

/// Dispatches on spec.family.
Matrix evaluate(const Vector& x, const Vector& z, const KernelSpec& spec);

}  // namespace hamkernel::kernels

#endif  // HAMKERNEL_KERNELS_HPP
